//! gr(G) = ⊕ G_ν / G_ν⁺ with the action of ε (x ↦ x^p), and ordered bases.

use super::pcgs::Pcgs;
use super::{Elem, FilteredGroup};
use crate::error::{Error, Result};
use crate::padic::snf::{snf_mod, ModMatrix};
use crate::padic::modint::Zpk;
use crate::padic::{ceil_q, Q};

#[derive(Clone, Debug)]
pub struct GradedPiece {
    pub nu: Q,
    pub dim: usize,
    /// Matrix of `ε: gr_ν → gr_{ν+1}` (rows index gr_{ν+1}); `None` if ν+1 is
    /// beyond the computed range.
    pub eps: Option<Vec<Vec<u64>>>,
}

impl GradedPiece {
    pub fn eps_rank(&self, p: u64) -> Option<usize> {
        let m = self.eps.as_ref()?;
        if m.is_empty() || self.dim == 0 {
            return Some(0);
        }
        let fp = Zpk::new(p, 1).ok()?;
        Some(snf_mod(&ModMatrix::from_residues(fp, m, self.dim), false).rank())
    }
}

fn level_for(g: &dyn FilteredGroup, level: Q) -> Result<()> {
    if level > g.precision() {
        return Err(Error::InsufficientPrecision {
            what: format!("graded pieces of {} up to filtration {}", g.describe(), level),
            required: ceil_q(level) as u32,
        });
    }
    Ok(())
}

/// The whole truncated group `G / G_level` as a filtered pcgs.
pub(crate) fn whole_group(g: &dyn FilteredGroup, level: Q) -> Result<Pcgs<'_>> {
    level_for(g, level)?;
    Ok(Pcgs::filtration_subgroup(g, g.min_valuation(), level))
}

fn pieces_from(g: &dyn FilteredGroup, pc: &Pcgs<'_>, up_to: Q) -> Vec<GradedPiece> {
    let level = pc.level();
    g.degrees(g.min_valuation(), up_to + g.step())
        .into_iter()
        .map(|nu| {
            let dim = pc.dim_at(nu);
            let target = nu + 1;
            let eps = (target < level).then(|| {
                let rows = pc.dim_at(target);
                let mut m = vec![vec![0u64; dim]; rows];
                for (j, h) in pc.layer(nu).iter().enumerate() {
                    let hp = g.pow_p(h);
                    let lead = g.leading(&hp, target);
                    let c = pc.layer_coordinates(target, &lead).expect("p-th power lies in the group");
                    for (i, v) in c.into_iter().enumerate() {
                        m[i][j] = v;
                    }
                }
                m
            });
            GradedPiece { nu, dim, eps }
        })
        .collect()
}

/// Dimensions of `gr_ν G` for `ν <= up_to`, with ε matrices where the target
/// degree is also computed.
pub fn graded_pieces(g: &dyn FilteredGroup, up_to: Q) -> Result<Vec<GradedPiece>> {
    let level = up_to + 1 + g.step();
    let level = if level > g.precision() { up_to + g.step() } else { level };
    let pc = whole_group(g, level)?;
    Ok(pieces_from(g, &pc, up_to))
}

#[derive(Clone, Debug)]
pub struct OrderedBasis {
    pub elements: Vec<Elem>,
    pub valuations: Vec<Q>,
    pub equi_p_valued: bool,
}

impl OrderedBasis {
    pub fn rank(&self) -> usize {
        self.elements.len()
    }

    /// The common valuation when equi-p-valued.
    pub fn common_valuation(&self) -> Option<Q> {
        if self.equi_p_valued {
            self.valuations.first().copied()
        } else {
            None
        }
    }
}

/// Representatives of an F_p[ε]-basis of gr(G): the pcgs elements in degrees
/// `[ν₀, ν₀+1)`, after checking that ε is bijective from there on.
pub fn find_ordered_basis(g: &dyn FilteredGroup) -> Result<OrderedBasis> {
    let nu0 = g.min_valuation();
    let level = nu0 + 2;
    let pc = whole_group(g, level)?;
    let pieces = pieces_from(g, &pc, level - g.step());
    let mut elements = Vec::new();
    let mut valuations = Vec::new();
    for piece in &pieces {
        if piece.nu >= nu0 + 1 {
            break;
        }
        let rank = piece.eps_rank(g.p()).unwrap_or(0);
        let next = pc.dim_at(piece.nu + 1);
        if rank != piece.dim || next != piece.dim {
            return Err(Error::Inconsistent(format!(
                "gr of {} is not free over F_p[eps]: degree {} has dim {}, eps rank {}, next dim {}",
                g.describe(),
                piece.nu,
                piece.dim,
                rank,
                next
            )));
        }
        for x in pc.layer(piece.nu) {
            elements.push(x);
            valuations.push(piece.nu);
        }
    }
    let equi = valuations.windows(2).all(|w| w[0] == w[1]);
    Ok(OrderedBasis { elements, valuations, equi_p_valued: equi })
}
