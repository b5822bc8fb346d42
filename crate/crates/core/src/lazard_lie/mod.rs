//! Lie lattices attached to p-valued groups, and their modules.

pub mod extract;
pub mod lattice;
pub mod module;

pub use extract::{check_lattice_identity, lazard_lie, DeltaFrame, LatticeIdentity, LazardLattice};
pub use lattice::LieLattice;
pub use module::{matrix_log, Coefficients, GroupModule, LieModule};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{qi, Zpk};
    use crate::pgroups::{build_group, MatrixGroupSpec};

    #[test]
    fn heisenberg_structure_constants() {
        let g = build_group(&MatrixGroupSpec::heisenberg(3, 8).unwrap()).unwrap();
        let l = lazard_lie(&g).unwrap();
        assert_eq!(l.lattice.d, 3);
        assert_eq!(l.lattice.nonzero(), vec![(0, 1, 2, 3)]);
        assert_eq!(l.basis.valuations, vec![qi(1); 3]);
    }

    #[test]
    fn congruence_lattice_is_p_gl() {
        let g = build_group(&MatrixGroupSpec::congruence(3, 2, 1, 8).unwrap()).unwrap();
        let l = lazard_lie(&g).unwrap();
        assert!(check_lattice_identity(&l, 1).holds);
        let g = build_group(&MatrixGroupSpec::congruence(2, 1, 2, 10).unwrap()).unwrap();
        let l = lazard_lie(&g).unwrap();
        let v = check_lattice_identity(&l, 2);
        assert!(v.holds, "{v:?}");
    }

    #[test]
    fn induced_modules_match_closed_forms() {
        let g = build_group(&MatrixGroupSpec::congruence(3, 2, 1, 8).unwrap()).unwrap();
        let l = lazard_lie(&g).unwrap();
        let ring = Zpk::new(3, 2).unwrap();
        for c in [Coefficients::Adjoint, Coefficients::Det, Coefficients::Trivial { rank: 2 }] {
            let m = GroupModule::new(&g, &l, ring, c).unwrap();
            let a = m.induced().unwrap();
            let b = m.expected_lie_module().unwrap();
            assert_eq!(a.actions, b.actions, "{c}");
        }
        let m = GroupModule::new(&g, &l, Zpk::new(3, 1).unwrap(), Coefficients::Adjoint).unwrap();
        assert!(m.induced().unwrap().is_trivial());
    }

    #[test]
    fn lattice_text_round_trip() {
        let q = lattice::quaternion(5, 2);
        let back = LieLattice::parse(&q.to_text()).unwrap();
        assert_eq!(back, q);
        assert!(LieLattice::parse("d 3\n0 1 0 1\n0 2 1 1\n").is_err());
    }

    #[test]
    fn quaternion_lattice_from_group() {
        let g = build_group(&MatrixGroupSpec::quaternion(5, 8).unwrap()).unwrap();
        let l = lazard_lie(&g).unwrap();
        assert_eq!(l.lattice.d, 4);
        assert!(!l.lattice.is_abelian());
    }
}
