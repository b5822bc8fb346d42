//! Invariants quantified over the shipped fixtures. Every random choice is
//! seeded, so a run is reproducible.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, FileFailurePersistence, RngSeed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lazardlab_core::filtered::{graded_pieces, FilteredGroup};
use lazardlab_core::group_cohom::{bar_complex, continuous_cohomology, CayleyModel, FiniteGroup, FiniteModule, StableOptions};
use lazardlab_core::lazard_lie::{lattice, lazard_lie, LieLattice, LieModule};
use lazardlab_core::lazmap::{bar_differential_analytic, lazard_phi, AnalyticCochain, Chart, RPoly};
use lazardlab_core::lie_cohom::{ce_complex, ce_complex_trivial};
use lazardlab_core::padic::complex::truncate_exponents;
use lazardlab_core::padic::series::{expm1, log1p};
use lazardlab_core::padic::snf::{snf_int, snf_mod, snf_mod_oracle, snf_oracle, IntMatrix, ModMatrix};
use lazardlab_core::padic::{Algebra, RingSpec, Val, Zpk};
use lazardlab_core::pgroups::{build_group, MatrixGroupSpec, QuotientTower, UnitGroup};

fn config(cases: u32, seed: u64) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: Some(Box::new(FileFailurePersistence::Off)),
        ..Config::default()
    }
}

fn lie_fixtures() -> Vec<LieLattice> {
    let mut v: Vec<LieLattice> = (1..=4).map(lattice::abelian).collect();
    v.extend([lattice::heisenberg(3), lattice::heisenberg(5), lattice::quaternion(5, 2), lattice::quaternion(7, 3)]);
    v.extend([lattice::scaled_gl(3, 2), lattice::scaled_gl(5, 2)]);
    v
}

fn group_fixtures() -> Vec<UnitGroup> {
    let ram = RingSpec::pure(5, 2, 8).unwrap();
    [
        MatrixGroupSpec::congruence(3, 1, 1, 8).unwrap(),
        MatrixGroupSpec::congruence(3, 2, 1, 8).unwrap(),
        MatrixGroupSpec::congruence(5, 1, 1, 8).unwrap(),
        MatrixGroupSpec::heisenberg(3, 8).unwrap(),
        MatrixGroupSpec::torus(3, 2, 8).unwrap(),
        MatrixGroupSpec::quaternion(5, 8).unwrap(),
        MatrixGroupSpec::new(ram.clone(), 1, 1),
        MatrixGroupSpec::new(ram, 1, 2).weil(),
    ]
    .iter()
    .map(|s| build_group(s).unwrap())
    .collect()
}

fn lattice_prime(l: &LieLattice) -> u64 {
    // every nonabelian fixture has constants divisible by its prime
    [3u64, 5, 7].into_iter().find(|&p| l.nonzero().iter().all(|c| c.3 % p as i64 == 0)).unwrap_or(3)
}

proptest! {
    #![proptest_config(config(500, 11))]

    #[test]
    fn integer_snf_matches_oracle(rows in 1usize..=8, cols in 1usize..=8, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-40..=40)).collect()).collect();
        let a = IntMatrix::from_rows(&data);
        let fast = snf_int(&a, true);
        prop_assert_eq!(&fast.divisors, &snf_oracle(&a).unwrap());
        let t = fast.transforms.unwrap();
        let d = t.u.mul(&a).mul(&t.v);
        for i in 0..rows {
            for j in 0..cols {
                let want = if i == j { fast.divisors[i].clone() } else { BigInt::from(0) };
                prop_assert_eq!(d.get(i, j).clone(), want);
            }
        }
    }

    #[test]
    fn modular_snf_matches_oracle(rows in 1usize..=8, cols in 1usize..=8, pi in 0usize..3, k in 1u32..=3, seed in any::<u64>()) {
        let p = [2u64, 3, 5][pi];
        let ring = Zpk::new(p, k).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // bias towards entries of positive valuation
        let data: Vec<Vec<u64>> = (0..rows)
            .map(|_| (0..cols).map(|_| ring.mul(rng.gen_range(0..ring.modulus()), ring.p_pow(rng.gen_range(0..=k)))).collect())
            .collect();
        let a = ModMatrix::from_residues(ring, &data, cols);
        prop_assert_eq!(snf_mod(&a, false).exponents, snf_mod_oracle(&a).unwrap());
    }
}

proptest! {
    #![proptest_config(config(200, 12))]

    #[test]
    fn log_exp_round_trip(pi in 0usize..3, n in 1usize..=3, seed in any::<u64>()) {
        let p = [2u64, 3, 5][pi];
        let alg = Algebra::matrix(&RingSpec::unramified(p, 8).unwrap(), n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = alg.zpk().modulus();
        let y: Vec<u64> = (0..alg.dim()).map(|_| rng.gen_range(0..m)).collect();
        let x = alg.scale(if p == 2 { 4 } else { p }, &y);
        let l = log1p(&alg, &x).unwrap();
        prop_assert_eq!(expm1(&alg, &l).unwrap(), x.clone());
        prop_assert_eq!(log1p(&alg, &expm1(&alg, &x).unwrap()).unwrap(), x);
    }
}

proptest! {
    #![proptest_config(config(40, 13))]

    #[test]
    fn analytic_bar_squares_to_zero(fix in 0usize..3, arity in 1usize..=2, seed in any::<u64>()) {
        let l = [lattice::abelian(3), lattice::heisenberg(3), lattice::scaled_gl(3, 2)][fix].clone();
        let chart = Chart::new(&l, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = AnalyticCochain::random(&mut rng, arity, l.d, 2, 4);
        let df = bar_differential_analytic(&f, &chart).unwrap();
        prop_assert!(bar_differential_analytic(&df, &chart).unwrap().poly.is_zero());
    }

    #[test]
    fn phi_is_linear_and_alternating(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = AnalyticCochain::random(&mut rng, 2, 3, 2, 4);
        let g = AnalyticCochain::random(&mut rng, 2, 3, 2, 4);
        let sum = AnalyticCochain { poly: f.poly.add(&g.poly), ..f.clone() };
        let pf = lazard_phi(&f);
        let pg = lazard_phi(&g);
        let ps = lazard_phi(&sum);
        for i in 0..ps.coeffs.len() {
            prop_assert_eq!(&ps.coeffs[i], &(&pf.coeffs[i] + &pg.coeffs[i]));
        }
        // swapping the two argument blocks negates Φ
        let mut swapped = RPoly::zero(6, 4);
        for (e, c) in &f.poly.terms {
            let mut s = e[3..].to_vec();
            s.extend_from_slice(&e[..3]);
            swapped.add_term(s, c.clone());
        }
        let pw = lazard_phi(&AnalyticCochain { poly: swapped, ..f.clone() });
        for i in 0..pw.coeffs.len() {
            prop_assert_eq!(&pw.coeffs[i], &-pf.coeffs[i].clone());
        }
    }
}

#[test]
fn ce_differentials_square_to_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for l in lie_fixtures() {
        let p = lattice_prime(&l);
        for k in 1..=3 {
            let ring = Zpk::new(p, k).unwrap();
            let mut complexes = vec![ce_complex_trivial(&l, ring).unwrap()];
            complexes.push(ce_complex(&l, &LieModule::adjoint(&l, ring).unwrap()).unwrap());
            for ce in complexes {
                ce.complex.check_d_squared().unwrap();
                for q in 0..ce.top().saturating_sub(1) {
                    let v: Vec<u64> = (0..ce.complex.dims[q]).map(|_| rng.gen_range(0..ring.modulus())).collect();
                    let dd = ce.differential(q + 1, &ce.differential(q, &v));
                    assert!(dd.iter().all(|&x| x == 0), "{} degree {q}", l.provenance);
                }
            }
        }
    }
}

#[test]
fn lie_cohomology_has_zero_euler_characteristic() {
    for l in lie_fixtures() {
        let ring = Zpk::new(lattice_prime(&l), 1).unwrap();
        let dims: Vec<i64> = ce_complex_trivial(&l, ring).unwrap().cohomology().iter().map(|h| h.exponents().len() as i64).collect();
        let chi: i64 = dims.iter().enumerate().map(|(i, d)| if i % 2 == 0 { *d } else { -d }).sum();
        assert_eq!(chi, 0, "{}", l.provenance);
    }
}

#[test]
fn jacobi_holds_for_all_lattices() {
    for l in lie_fixtures() {
        assert_eq!(l.defect(), None, "{}", l.provenance);
    }
    for g in group_fixtures() {
        let lat = lazard_lie(&g).unwrap();
        assert_eq!(lat.lattice.defect(), None, "{}", g.describe());
    }
}

/// `gr_ν` of the lattice spanned by the `δ_i`, counted from their own valuations.
fn lattice_graded_dims(vals: &[lazardlab_core::padic::Q], nu: lazardlab_core::padic::Q) -> usize {
    vals.iter().filter(|&&v| v <= nu && (nu - v).is_integer()).count()
}

#[test]
fn graded_lattice_matches_graded_group() {
    for g in group_fixtures() {
        let lat = lazard_lie(&g).unwrap();
        let vals: Vec<_> = lat
            .frame
            .deltas()
            .iter()
            .map(|d| match g.layout().val(d) {
                Val::Exact(v) => v,
                other => panic!("δ of {} has valuation {other}", g.describe()),
            })
            .collect();
        for piece in graded_pieces(&g, g.min_valuation() + 2).unwrap() {
            assert_eq!(piece.dim, lattice_graded_dims(&vals, piece.nu), "{} at {}", g.describe(), piece.nu);
        }
    }
}

#[test]
fn lie_divisors_truncate_across_k() {
    for l in lie_fixtures() {
        let p = lattice_prime(&l);
        let exps = |k: u32| -> Vec<Vec<u32>> {
            ce_complex_trivial(&l, Zpk::new(p, k).unwrap()).unwrap().cohomology().iter().map(|h| h.exponents()).collect()
        };
        let (e1, e2, e3) = (exps(1), exps(2), exps(3));
        for i in 0..e1.len() {
            assert_eq!(e1[i], truncate_exponents(&e2[i], 1), "{} degree {i}", l.provenance);
            assert_eq!(e2[i], truncate_exponents(&e3[i], 2), "{} degree {i}", l.provenance);
        }
    }
}

#[test]
fn group_divisors_truncate_across_k() {
    let specs = [MatrixGroupSpec::congruence(3, 1, 1, 8).unwrap(), MatrixGroupSpec::torus(3, 2, 8).unwrap()];
    for spec in specs {
        let g = build_group(&spec).unwrap();
        let run = |k: u32| {
            let ring = Zpk::new(3, k).unwrap();
            let id = |_: &Vec<u64>| Ok(ModMatrix::identity(ring, 1));
            continuous_cohomology(&g, ring, 1, &id, 2, StableOptions::default()).unwrap().exponents()
        };
        let (e1, e2) = (run(1), run(2));
        for i in 0..e1.len() {
            assert_eq!(e1[i], truncate_exponents(&e2[i], 1), "{} degree {i}", g.describe());
        }
    }
}

#[test]
fn bar_differentials_square_to_zero() {
    let groups = [
        FiniteGroup::cyclic(3, 1).unwrap(),
        FiniteGroup::cyclic(3, 2).unwrap(),
        FiniteGroup::abelian(3, 1, 2).unwrap(),
        FiniteGroup::abelian(2, 1, 2).unwrap(),
        FiniteGroup::heisenberg_mod_p(3).unwrap(),
    ];
    for g in &groups {
        for k in 1..=2 {
            let ring = Zpk::new(g.p, k).unwrap();
            let m = FiniteModule::trivial(ring, 1, g.ngens());
            let deg = if g.order <= 9 { 3 } else { 1 };
            bar_complex(g, &m, deg, 1 << 22).unwrap().complex.check_d_squared().unwrap();
            let c = CayleyModel::new(g, &m).unwrap();
            assert!(c.d1().compose(&c.d0()).is_zero(), "{}", g.label);
        }
    }
}

#[test]
fn inflation_commutes_with_bar_differentials() {
    let g = build_group(&MatrixGroupSpec::heisenberg(3, 8).unwrap()).unwrap();
    let tower = QuotientTower::new(&g, g.precision()).unwrap();
    let ring = Zpk::new(3, 2).unwrap();
    let small = FiniteGroup::from_quotient(&tower, &tower.quotient(3, 1000).unwrap(), true);
    let big = FiniteGroup::from_quotient(&tower, &tower.quotient(4, 1000).unwrap(), true);
    let proj = big.projection_to(&small).unwrap();
    let bs = bar_complex(&small, &FiniteModule::trivial(ring, 1, small.ngens()), 1, 1 << 22).unwrap();
    let bb = bar_complex(&big, &FiniteModule::trivial(ring, 1, big.ngens()), 1, 1 << 22).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for q in 0..=1 {
        let v: Vec<u64> = (0..bs.complex.dims[q]).map(|_| rng.gen_range(0..ring.modulus())).collect();
        let left = bb.complex.diffs[q].mul_vec(&bb.inflate_from(&bs, &proj, q, &v));
        let right = bb.inflate_from(&bs, &proj, q + 1, &bs.complex.diffs[q].mul_vec(&v));
        assert_eq!(left, right, "degree {q}");
    }
}

#[test]
fn phi_of_a_coboundary_is_a_ce_coboundary() {
    let l = lattice::heisenberg(3);
    let chart = Chart::new(&l, 4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..20 {
        let f = AnalyticCochain::random(&mut rng, 1, 3, 3, 4);
        let lhs = lazard_phi(&bar_differential_analytic(&f, &chart).unwrap());
        let rhs = lazardlab_core::lazmap::ce_differential(&l, &lazard_phi(&f));
        assert_eq!(lhs, rhs);
    }
    // a constant-free linear function is a homomorphism on an abelian chart
    let ab = Chart::new(&lattice::abelian(2), 4).unwrap();
    let mut poly = RPoly::zero(2, 4);
    poly.add_term(vec![1, 0], BigRational::from_integer(1.into()));
    let f = AnalyticCochain::new(1, 2, poly).unwrap();
    assert!(bar_differential_analytic(&f, &ab).unwrap().poly.is_zero());
}
