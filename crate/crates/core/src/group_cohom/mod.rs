//! Cohomology of finite p-groups and continuous cohomology of p-valued groups.

pub mod bar;
pub mod cayley;
pub mod finite;
pub mod stable;

pub use bar::{bar_complex, BarComplex};
pub use cayley::CayleyModel;
pub use finite::{FiniteGroup, FiniteModule};
pub use stable::{
    continuous_cohomology, degree_one_cup_span, inflation_image, CupSpan, ImageEntry, StableDegree, StableOptions,
    StabilizedCohomology,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::snf::ModMatrix;
    use crate::padic::Zpk;
    use crate::pgroups::{build_group, MatrixGroupSpec};

    const CAP: usize = 1 << 22;

    fn bar_exps(g: &FiniteGroup, ring: Zpk, deg: usize) -> Vec<Vec<u32>> {
        let m = FiniteModule::trivial(ring, 1, g.ngens());
        let b = bar_complex(g, &m, deg, CAP).unwrap();
        (0..=deg).map(|q| b.complex.cohomology(q).exponents()).collect()
    }

    #[test]
    fn cyclic_group_is_periodic() {
        let g = FiniteGroup::cyclic(3, 1).unwrap();
        assert_eq!(bar_exps(&g, Zpk::new(3, 1).unwrap(), 4), vec![vec![1]; 5]);
    }

    #[test]
    fn elementary_abelian_square() {
        let g = FiniteGroup::abelian(3, 1, 2).unwrap();
        let dims: Vec<usize> = bar_exps(&g, Zpk::new(3, 1).unwrap(), 2).iter().map(|e| e.len()).collect();
        assert_eq!(dims, vec![1, 2, 3]);
    }

    #[test]
    fn cayley_agrees_with_bar() {
        let groups = [
            FiniteGroup::cyclic(3, 2).unwrap(),
            FiniteGroup::abelian(3, 1, 2).unwrap(),
            FiniteGroup::heisenberg_mod_p(3).unwrap(),
        ];
        for g in &groups {
            for k in [1, 2] {
                let ring = Zpk::new(3, k).unwrap();
                let bar = bar_exps(g, ring, 2);
                let m = FiniteModule::trivial(ring, 1, g.ngens());
                let c = CayleyModel::new(g, &m).unwrap();
                let cay: Vec<Vec<u32>> = (0..3).map(|q| c.cohomology(q).exponents()).collect();
                assert_eq!(bar, cay, "{} mod 3^{k}", g.label);
            }
        }
    }

    #[test]
    fn heisenberg_of_order_27_has_two_homs() {
        let g = FiniteGroup::heisenberg_mod_p(3).unwrap();
        assert_eq!(g.order, 27);
        let e = bar_exps(&g, Zpk::new(3, 1).unwrap(), 1);
        assert_eq!(e[1].len(), 2);
    }

    #[test]
    fn bar_cocycles_transport_to_cayley() {
        let g = FiniteGroup::abelian(3, 1, 2).unwrap();
        let ring = Zpk::new(3, 1).unwrap();
        let m = FiniteModule::trivial(ring, 1, 2);
        let bar = bar_complex(&g, &m, 2, CAP).unwrap();
        let cay = CayleyModel::new(&g, &m).unwrap();
        let h2 = cay.cohomology(2);
        let z2 = bar.complex.cocycles(2);
        let hb = bar.complex.cohomology(2);
        for z in &z2 {
            let f = |a: usize, b: usize| vec![bar.coordinate(&[a, b], 0).map_or(0, |i| z[i])];
            let phi = cay.from_bar2(&f);
            let bar_trivial = hb.quotient.is_trivial_class(z).unwrap();
            assert_eq!(h2.is_trivial_class(&phi), Some(bar_trivial));
        }
    }

    #[test]
    fn cup_of_independent_classes() {
        let g = FiniteGroup::abelian(3, 1, 2).unwrap();
        let ring = Zpk::new(3, 1).unwrap();
        let m = FiniteModule::trivial(ring, 1, 2);
        let bar = bar_complex(&g, &m, 2, CAP).unwrap();
        let h1 = bar.complex.cohomology(1);
        let reps = h1.quotient.representatives().to_vec();
        let ab = bar.cup(1, &reps[0], 1, &reps[1]).unwrap();
        let h2 = bar.complex.cohomology(2);
        assert_eq!(h2.quotient.is_trivial_class(&ab), Some(false));
        let aa = bar.cup(1, &reps[0], 1, &reps[0]).unwrap();
        assert_eq!(h2.quotient.is_trivial_class(&aa), Some(true));
        let cay = CayleyModel::new(&g, &m).unwrap();
        let c = cay.cup11(&[1, 0], &[0, 1]);
        assert_eq!(cay.cohomology(2).is_trivial_class(&c), Some(false));
    }

    #[test]
    fn twisted_action_must_factor() {
        let g = FiniteGroup::cyclic(3, 1).unwrap();
        let ring = Zpk::new(3, 2).unwrap();
        let mut a = ModMatrix::identity(ring, 1);
        a.set(0, 0, 4);
        let m = FiniteModule { ring, rank: 1, gen_actions: vec![a] };
        assert!(m.element_actions(&g).is_ok());
        a = ModMatrix::identity(ring, 1);
        a.set(0, 0, 2);
        let m = FiniteModule { ring, rank: 1, gen_actions: vec![a] };
        assert!(m.element_actions(&g).is_err());
    }

    #[test]
    fn procyclic_with_z9() {
        let g = build_group(&MatrixGroupSpec::congruence(3, 1, 1, 8).unwrap()).unwrap();
        let ring = Zpk::new(3, 2).unwrap();
        let id = |_: &crate::filtered::Elem| Ok(ModMatrix::identity(ring, 1));
        let h = continuous_cohomology(&g, ring, 1, &id, 2, StableOptions::default()).unwrap();
        assert_eq!(h.exponents(), vec![vec![2], vec![2], vec![]]);
        assert!(h.stabilized());
    }
}
