//! Matrix congruence groups, their finite quotients, lower p-series and
//! uniformity checks.

mod quotient;
mod series;
mod unit;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filtered::{find_ordered_basis, FilteredGroup, Reweighted};
use crate::padic::{q, qi, Algebra, Layout, RingSpec, Q};

pub use quotient::{FiniteQuotient, QuotientTower};
pub use series::{check_uniform, lower_p_series, LowerPSeries, UniformityVerdict};
pub use unit::UnitGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    #[default]
    Full,
    /// Strictly upper triangular `X`, i.e. unipotent matrices.
    Upper,
    Diagonal,
    /// Upper triangular 3×3 with basis order `E12, E23, E13`.
    Heisenberg,
    /// `1 + ΠO` in the quaternion order.
    Quaternion,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixGroupSpec {
    pub ring: RingSpec,
    pub n: usize,
    /// The group is `1 + π^level M_n(R)`.
    pub level: u32,
    #[serde(default)]
    pub shape: Shape,
    /// Use the valuation of Z_p-coordinates (the Weil-restriction view) instead
    /// of the valuation of R; needs `level` to be a multiple of e.
    #[serde(default)]
    pub weil: bool,
    /// Allow `level < ρ` when p = 2 (such groups are not p-valued).
    #[serde(default)]
    pub allow_below_rho: bool,
}

impl MatrixGroupSpec {
    pub fn new(ring: RingSpec, n: usize, level: u32) -> Self {
        MatrixGroupSpec { ring, n, level, shape: Shape::Full, weil: false, allow_below_rho: false }
    }

    pub fn with_shape(mut self, shape: Shape) -> Self {
        self.shape = shape;
        self
    }

    pub fn weil(mut self) -> Self {
        self.weil = true;
        self
    }

    pub fn below_rho(mut self) -> Self {
        self.allow_below_rho = true;
        self
    }

    /// `1 + p^level M_n(Z_p)` at `digits` p-adic digits.
    pub fn congruence(p: u64, n: usize, level: u32, digits: u32) -> Result<Self> {
        Ok(MatrixGroupSpec::new(RingSpec::unramified(p, digits)?, n, level))
    }

    /// Unipotent upper triangular 3×3 matrices `1 + p·(upper)`.
    pub fn heisenberg(p: u64, digits: u32) -> Result<Self> {
        Ok(MatrixGroupSpec::new(RingSpec::unramified(p, digits)?, 3, 1).with_shape(Shape::Heisenberg))
    }

    /// `(1 + p Z_p)^d` as diagonal matrices.
    pub fn torus(p: u64, d: usize, digits: u32) -> Result<Self> {
        Ok(MatrixGroupSpec::new(RingSpec::unramified(p, digits)?, d, 1).with_shape(Shape::Diagonal))
    }

    /// `1 + ΠO` in the maximal order of the quaternion division algebra over Q_p.
    pub fn quaternion(p: u64, digits: u32) -> Result<Self> {
        Ok(MatrixGroupSpec::new(RingSpec::unramified(p, digits)?, 1, 1).with_shape(Shape::Quaternion))
    }
}

/// Smallest quadratic non-residue mod p.
pub fn non_residue(p: u64) -> i64 {
    (2..p as i64).find(|&c| crate::padic::Zpk::new(p, 1).unwrap().pow(c as u64, (p - 1) / 2) == p - 1).unwrap_or(-1)
}

pub fn build_group(spec: &MatrixGroupSpec) -> Result<UnitGroup> {
    let ring = spec.ring.clone().normalized()?;
    ring.validate()?;
    let p = ring.p;
    if spec.shape == Shape::Quaternion {
        if p < 5 {
            return Err(Error::Unsupported("the quaternion fixture 1+ΠO is p-valued only for p >= 5".into()));
        }
        let alg = Algebra::quaternion(p, non_residue(p), ring.digits())?;
        let layout = alg.layout().clone();
        let label = format!("1+Pi*O in the quaternion order, p={p}, c={}", non_residue(p));
        return Ok(UnitGroup::new(alg, layout, 2, vec![0, 1, 2, 3], q(1, 2), label));
    }
    let e = ring.e;
    let rho = ring.rho();
    if spec.weil {
        if !spec.level.is_multiple_of(e) || spec.level == 0 {
            return Err(Error::InvalidInput("the Z_p-coordinate valuation needs level a positive multiple of e".into()));
        }
        if p == 2 {
            return Err(Error::Unsupported("Z_p-coordinate valuation with p = 2".into()));
        }
    } else if spec.level < rho && !(p == 2 && spec.allow_below_rho) {
        return Err(Error::LevelBelowRho { level: spec.level, rho });
    }
    let n = spec.n;
    let alg = Algebra::matrix(&ring, n)?;
    let ix = |i: usize, j: usize| -> Vec<usize> { (0..e as usize).map(|l| alg.index(i, j, l)).collect() };
    let coords: Vec<usize> = match spec.shape {
        Shape::Full => (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).flat_map(|(i, j)| ix(i, j)).collect(),
        Shape::Upper => (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).flat_map(|(i, j)| ix(i, j)).collect(),
        Shape::Diagonal => (0..n).flat_map(|i| ix(i, i)).collect(),
        Shape::Heisenberg => {
            if n != 3 {
                return Err(Error::InvalidInput("heisenberg shape needs n = 3".into()));
            }
            [(0, 1), (1, 2), (0, 2)].iter().flat_map(|&(i, j)| ix(i, j)).collect()
        }
        Shape::Quaternion => unreachable!(),
    };
    let (layout, ge, level) = if spec.weil {
        (Layout::new(alg.zpk(), vec![qi(0); alg.dim()]), 1, qi((spec.level / e) as i64))
    } else {
        (alg.layout().clone(), e, Q::new(spec.level as i64, e as i64))
    };
    let shape = match spec.shape {
        Shape::Full => "",
        Shape::Upper => " upper unipotent",
        Shape::Diagonal => " diagonal",
        Shape::Heisenberg => " heisenberg",
        Shape::Quaternion => "",
    };
    let ringname = if e == 1 { format!("Z_{p}") } else { format!("Z_{p}[pi], pi^{e}={:?}", ring.eisenstein_poly) };
    let label = format!(
        "1+pi^{}M_{}({}){}{}",
        spec.level,
        n,
        ringname,
        shape,
        if spec.weil { " with Z_p-coordinate valuation" } else { "" }
    );
    Ok(UnitGroup::new(alg, layout, ge, coords, level, label))
}

/// `ω' = ω + 1 - t` on an equi-p-valued group with basis valuation `t`.
pub fn renormalize_valuation<G: FilteredGroup>(g: G, t: Q) -> Result<Reweighted<G>> {
    if g.p() == 2 {
        return Err(Error::Unsupported("renormalization needs an odd prime".into()));
    }
    let basis = find_ordered_basis(&g)?;
    if basis.common_valuation() != Some(t) {
        return Err(Error::Hypothesis(format!(
            "{} is not equi-p-valued with basis valuation {t} (valuations {:?})",
            g.describe(),
            basis.valuations.iter().map(|v| v.to_string()).collect::<Vec<_>>()
        )));
    }
    Ok(Reweighted::new(g, qi(1), qi(1) - t))
}

/// Group spec file: TOML with `p, e, eisenstein_poly, n, level, shape,
/// fixture_tag, precision_N`.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpecFile {
    pub p: u64,
    #[serde(default = "one")]
    pub e: u32,
    #[serde(default)]
    pub eisenstein_poly: Vec<i64>,
    #[serde(default = "one_usize")]
    pub n: usize,
    #[serde(default = "one")]
    pub level: u32,
    #[serde(default)]
    pub shape: Shape,
    #[serde(default)]
    pub fixture_tag: Option<String>,
    #[serde(rename = "precision_N")]
    pub precision_n: u32,
    #[serde(default)]
    pub weil: bool,
    #[serde(default)]
    pub allow_below_rho: bool,
}

fn one() -> u32 {
    1
}

fn one_usize() -> usize {
    1
}

impl GroupSpecFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse { line: 0, msg: e.to_string() })
    }

    pub fn to_spec(&self) -> Result<MatrixGroupSpec> {
        let ring = RingSpec { p: self.p, e: self.e, eisenstein_poly: self.eisenstein_poly.clone(), precision_n: self.precision_n }
            .normalized()?;
        let mut spec = MatrixGroupSpec::new(ring, self.n, self.level);
        spec.shape = self.shape;
        spec.weil = self.weil;
        spec.allow_below_rho = self.allow_below_rho;
        match self.fixture_tag.as_deref() {
            None | Some("") => {}
            Some("heisenberg") => {
                spec.n = 3;
                spec.shape = Shape::Heisenberg;
            }
            Some("quaternion-units") => spec.shape = Shape::Quaternion,
            Some("torus") => spec.shape = Shape::Diagonal,
            Some(t) => return Err(Error::InvalidInput(format!("unknown fixture tag {t:?}"))),
        }
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filtered::{check_filtration, check_filtration_on, graded_pieces, AxiomId, AxiomStatus, FilteredGroup};
    use crate::padic::q;

    #[test]
    fn congruence_group_is_p_valued() {
        let g = build_group(&MatrixGroupSpec::congruence(3, 2, 1, 6).unwrap()).unwrap();
        let b = find_ordered_basis(&g).unwrap();
        let r = check_filtration_on(&g, 60, 7, &b.elements);
        assert!(r.p_valued(), "{:?}", r.axioms);
        assert_eq!(b.rank(), 4);
        assert!(b.equi_p_valued);
    }

    #[test]
    fn ramified_bases() {
        let ring = RingSpec::pure(5, 2, 8).unwrap();
        let g = build_group(&MatrixGroupSpec::new(ring.clone(), 1, 1)).unwrap();
        let b = find_ordered_basis(&g).unwrap();
        assert_eq!(b.valuations, vec![q(1, 2), qi(1)]);
        // 1+π and 1+π²
        assert_eq!(b.elements, vec![vec![0, 1], vec![5, 0]]);
        assert!(!b.equi_p_valued);
        let gw = build_group(&MatrixGroupSpec::new(ring, 1, 2).weil()).unwrap();
        let bw = find_ordered_basis(&gw).unwrap();
        assert_eq!(bw.valuations, vec![qi(1), qi(1)]);
        // 1+p and 1+π³ = 1+5π
        assert_eq!(bw.elements, vec![vec![5, 0], vec![0, 5]]);
        assert!(check_filtration(&gw, 40, 1).p_valued());
    }

    #[test]
    fn doubled_valuation_breaks_power_axiom() {
        let g = build_group(&MatrixGroupSpec::congruence(3, 1, 1, 6).unwrap()).unwrap();
        let w = Reweighted::new(g, qi(2), qi(0));
        let r = check_filtration(&w, 30, 3);
        assert_eq!(r.status(AxiomId::PowerShift), AxiomStatus::Fails);
        assert!(r.axioms[&AxiomId::PowerShift].witness.is_some());
    }

    #[test]
    fn graded_dims_of_ramified_group() {
        let ring = RingSpec::pure(3, 2, 10).unwrap();
        let g = build_group(&MatrixGroupSpec::new(ring, 2, 2)).unwrap();
        let pieces = graded_pieces(&g, qi(3)).unwrap();
        assert_eq!(pieces.first().unwrap().nu, qi(1));
        for pc in &pieces {
            assert_eq!(pc.dim, 4);
        }
        assert_eq!(pieces.len(), 5);
    }

    #[test]
    fn quotients_and_series() {
        let g = build_group(&MatrixGroupSpec::heisenberg(3, 8).unwrap()).unwrap();
        let t = QuotientTower::new(&g, qi(3)).unwrap();
        assert_eq!(t.len(), 6);
        let q3 = t.quotient(3, 1000).unwrap().with_table(&t);
        assert_eq!(q3.order, 27);
        assert_eq!(q3.exponent(), 3);
        let s = lower_p_series(&g, 4).unwrap();
        assert_eq!(s.indices, vec![3, 3, 3, 3]);
        let u = check_uniform(&g, 4).unwrap();
        assert!(u.uniform && u.omega_matches_series == Some(true), "{u:?}");
    }

    #[test]
    fn two_adic_units() {
        let ring = RingSpec::unramified(2, 10).unwrap();
        let g = build_group(&MatrixGroupSpec::new(ring.clone(), 1, 1).below_rho()).unwrap();
        assert!(!check_uniform(&g, 4).unwrap().uniform);
        let h = build_group(&MatrixGroupSpec::new(ring, 1, 2)).unwrap();
        assert!(check_uniform(&h, 4).unwrap().uniform);
        let _ = h.describe();
    }
}
