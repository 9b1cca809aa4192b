//! Homotopy orbits, homotopy fixed points and the Tate construction for a
//! cyclic group C_n acting on a bounded chain complex, built from the
//! 2-periodic complete resolution with differentials sigma - 1 and
//! N = 1 + sigma + ... + sigma^{n-1}.
//!
//! For a bounded complex every total degree of the spliced double complex
//! receives finitely many terms, so all three constructions are computed
//! exactly. Unbounded outputs (the residual constructions below) are handled
//! by brutal truncation plus a stabilization certificate comparing values
//! across increasing cutoffs.

use crate::abelian::{exactness_defect, FinGenAb, RingTag};
use crate::complex::{
    homology_presentation, induced_on_homology, ChainComplex, ComplexError,
    HomologyPresentation,
};
use crate::matrix::IntMatrix;
use crate::snf::is_prime;
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Error, Debug, Clone)]
pub enum CyclicError {
    #[error("window values disagree across truncation cutoffs {cutoffs:?} at degree {degree}")]
    StabilizationFailure { degree: i64, cutoffs: Vec<i64> },
    #[error("expected vanishing but found {group} in degree {degree}")]
    NonVanishing { degree: i64, group: FinGenAb },
    #[error("norm fiber sequence fails exactness at degree {degree}: defect {defect}")]
    ExactnessFailure { degree: i64, defect: FinGenAb },
    #[error("tables disagree at degree {degree}: {left} vs {right}")]
    Mismatch {
        degree: i64,
        left: FinGenAb,
        right: FinGenAb,
    },
    #[error("order {0} is not the square of a prime")]
    OrderNotPrimeSquare(u64),
    #[error("invalid cyclic action: {0}")]
    InvalidAction(String),
    #[error("bad window: {0}")]
    BadWindow(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// An action of C_n on a bounded complex, given by the matrices of a chosen
/// generator in each degree. Degrees without a stored matrix carry the
/// trivial (identity) action.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CyclicAction {
    pub complex: ChainComplex,
    pub order: u64,
    #[serde(default)]
    pub sigma: BTreeMap<i64, IntMatrix>,
}

impl CyclicAction {
    pub fn trivial(complex: ChainComplex, order: u64) -> Self {
        CyclicAction {
            complex,
            order,
            sigma: BTreeMap::new(),
        }
    }

    pub fn generator(&self, degree: i64) -> IntMatrix {
        match self.sigma.get(&degree) {
            Some(m) => m.clone(),
            None => IntMatrix::identity(self.complex.rank(degree)),
        }
    }

    pub fn generator_power(&self, degree: i64, k: u64) -> IntMatrix {
        self.generator(degree).pow(k)
    }

    /// N = 1 + sigma + ... + sigma^{order-1} in the given degree.
    pub fn norm_element(&self, degree: i64) -> IntMatrix {
        let g = self.generator(degree);
        let mut acc = IntMatrix::identity(self.complex.rank(degree));
        let mut sum = acc.clone();
        for _ in 1..self.order {
            acc = acc.mul(&g);
            sum = sum.add(&acc);
        }
        sum
    }

    pub fn is_trivial(&self) -> bool {
        self.sigma.values().all(|m| m.is_identity())
    }

    pub fn validate(&self) -> Result<(), CyclicError> {
        if self.order == 0 {
            return Err(CyclicError::InvalidAction("order 0".into()));
        }
        self.complex.validate()?;
        let ring = self.complex.ring;
        for (&i, m) in &self.sigma {
            if m.rows() != self.complex.rank(i) || m.cols() != self.complex.rank(i) {
                return Err(CyclicError::InvalidAction(format!(
                    "sigma in degree {i} has wrong shape"
                )));
            }
        }
        for &i in self.complex.ranks.keys() {
            let g = self.generator(i);
            if !ring.matrices_equal(&g.pow(self.order), &IntMatrix::identity(g.rows())) {
                return Err(CyclicError::InvalidAction(format!(
                    "sigma^{} != id in degree {i}",
                    self.order
                )));
            }
            let d = self.complex.differential(i);
            if !ring.matrices_equal(&d.mul(&g), &self.generator(i - 1).mul(&d)) {
                return Err(CyclicError::InvalidAction(format!(
                    "sigma does not commute with d at degree {i}"
                )));
            }
        }
        Ok(())
    }
}

/// Degree window plus the truncation scheme for constructions that need one.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct TateWindow {
    pub lo: i64,
    pub hi: i64,
    pub truncation: i64,
    pub stride: i64,
}

impl TateWindow {
    pub fn new(lo: i64, hi: i64) -> Result<Self, CyclicError> {
        if hi < lo {
            return Err(CyclicError::BadWindow(format!("{hi} < {lo}")));
        }
        Ok(TateWindow {
            lo,
            hi,
            truncation: hi + 1,
            stride: 2,
        })
    }

    /// Default truncation headroom for an action: hi + 2 (order + length).
    pub fn default_for(action: &CyclicAction, lo: i64, hi: i64) -> Result<Self, CyclicError> {
        let mut w = Self::new(lo, hi)?;
        let len = match (action.complex.min_degree(), action.complex.max_degree()) {
            (Some(a), Some(b)) => b - a + 1,
            _ => 1,
        };
        w.truncation = hi + 2 * (action.order as i64 + len);
        Ok(w)
    }

    pub fn with_truncation(mut self, t: i64) -> Result<Self, CyclicError> {
        if t < self.hi + 1 {
            return Err(CyclicError::BadWindow(format!(
                "truncation {t} below window top {}",
                self.hi
            )));
        }
        self.truncation = t;
        Ok(self)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

/// Degreewise groups with optional generator labels.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GradedGroupTable {
    pub entries: BTreeMap<i64, FinGenAb>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<i64, String>,
}

impl GradedGroupTable {
    pub fn new(entries: BTreeMap<i64, FinGenAb>) -> Self {
        GradedGroupTable {
            entries,
            labels: BTreeMap::new(),
        }
    }

    pub fn zero_on(lo: i64, hi: i64) -> Self {
        Self::new((lo..=hi).map(|i| (i, FinGenAb::zero())).collect())
    }

    pub fn group(&self, degree: i64) -> FinGenAb {
        self.entries
            .get(&degree)
            .cloned()
            .unwrap_or_else(FinGenAb::zero)
    }

    pub fn is_identically_zero(&self) -> bool {
        self.entries.values().all(|g| g.is_zero())
    }

    pub fn first_difference(&self, other: &Self) -> Option<i64> {
        self.entries
            .keys()
            .chain(other.entries.keys())
            .find(|&&i| self.group(i) != other.group(i))
            .copied()
    }
}

/// Certificate that windowed values agreed across all compared cutoffs.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StabilizationCertificate {
    pub cutoffs: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VanishingReport {
    pub table: GradedGroupTable,
    pub certificate: StabilizationCertificate,
}

// ---------------------------------------------------------------------------
// the splice engine
// ---------------------------------------------------------------------------

/// Blocks of the spliced total complex in one degree: component s holds
/// Hom(P_s, X_{degree+s}). The differential raises s via the resolution word
/// w_s (sigma - 1 for s odd, N for s even) and applies (-1)^s d_X within s.
fn splice_blocks(
    action: &CyclicAction,
    s_lo: i64,
    s_hi: i64,
    degree: i64,
) -> Vec<(i64, i64, usize)> {
    (s_lo..=s_hi)
        .filter_map(|s| {
            let t = degree + s;
            let r = action.complex.rank(t);
            (r > 0).then_some((s, t, r))
        })
        .collect()
}

fn splice_word(action: &CyclicAction, s: i64, x_degree: i64) -> IntMatrix {
    let r = action.complex.rank(x_degree);
    if s.rem_euclid(2) == 1 {
        action.generator(x_degree).sub(&IntMatrix::identity(r))
    } else {
        action.norm_element(x_degree)
    }
}

/// The spliced total complex over components s in [s_lo, s_hi], materialized
/// for total degrees [deg_lo, deg_hi].
fn splice_complex(
    action: &CyclicAction,
    s_lo: i64,
    s_hi: i64,
    deg_lo: i64,
    deg_hi: i64,
) -> ChainComplex {
    let mut ranks = BTreeMap::new();
    let mut d = BTreeMap::new();
    for i in deg_lo..=deg_hi {
        let total: usize = splice_blocks(action, s_lo, s_hi, i)
            .iter()
            .map(|&(_, _, r)| r)
            .sum();
        ranks.insert(i, total);
    }
    for i in deg_lo + 1..=deg_hi {
        let src = splice_blocks(action, s_lo, s_hi, i);
        let dst = splice_blocks(action, s_lo, s_hi, i - 1);
        if src.is_empty() || dst.is_empty() {
            continue;
        }
        let row_dims: Vec<usize> = dst.iter().map(|&(_, _, r)| r).collect();
        let col_dims: Vec<usize> = src.iter().map(|&(_, _, r)| r).collect();
        let mut grid: Vec<Vec<Option<IntMatrix>>> = vec![vec![None; src.len()]; dst.len()];
        for (sj, &(s, t, _)) in src.iter().enumerate() {
            // vertical: (-1)^s d_X, staying in component s
            if let Some(di) = dst.iter().position(|&(s2, t2, _)| s2 == s && t2 == t - 1) {
                let dx = action.complex.differential(t);
                if !dx.is_zero() {
                    grid[di][sj] = Some(if s.rem_euclid(2) == 0 { dx } else { dx.neg() });
                }
            }
            // horizontal: w_{s+1}, component s -> s+1, same X-degree
            if let Some(di) = dst.iter().position(|&(s2, t2, _)| s2 == s + 1 && t2 == t) {
                let w = splice_word(action, s + 1, t);
                if !w.is_zero() {
                    grid[di][sj] = Some(w);
                }
            }
        }
        let refs: Vec<Vec<Option<&IntMatrix>>> = grid
            .iter()
            .map(|row| row.iter().map(|b| b.as_ref()).collect())
            .collect();
        let m = IntMatrix::from_blocks(&row_dims, &col_dims, &refs);
        if !m.is_empty() && !m.is_zero() {
            d.insert(i, m);
        }
    }
    ChainComplex {
        ring: action.complex.ring,
        ranks,
        d,
    }
}

/// s-range wide enough that every block meeting total degrees
/// [deg_lo, deg_hi] is present (finite since the complex is bounded).
fn full_s_range(action: &CyclicAction, deg_lo: i64, deg_hi: i64) -> Option<(i64, i64)> {
    let lo = action.complex.min_degree()?;
    let hi = action.complex.max_degree()?;
    Some((lo - deg_hi, hi - deg_lo))
}

fn table_from_complex(
    c: &ChainComplex,
    lo: i64,
    hi: i64,
) -> Result<GradedGroupTable, CyclicError> {
    Ok(GradedGroupTable::new(c.homology_range(lo, hi)?))
}

// ---------------------------------------------------------------------------
// orbits, fixed points, Tate
// ---------------------------------------------------------------------------

/// Exact homotopy orbits table on the window (bounded input).
pub fn homotopy_orbits(
    action: &CyclicAction,
    window: &TateWindow,
) -> Result<GradedGroupTable, CyclicError> {
    action.validate()?;
    if action.order == 1 {
        return table_from_complex(&action.complex, window.lo, window.hi);
    }
    let Some((s_lo, _)) = full_s_range(action, window.lo, window.hi + 2) else {
        return Ok(GradedGroupTable::zero_on(window.lo, window.hi));
    };
    // H_i(X_hG) = H_{i+1} of the s <= -1 part of the splice
    let part = splice_complex(action, s_lo.min(-1), -1, window.lo, window.hi + 2);
    let entries = (window.lo..=window.hi)
        .map(|i| Ok((i, part.homology(i + 1)?)))
        .collect::<Result<_, ComplexError>>()?;
    Ok(GradedGroupTable::new(entries))
}

/// Exact homotopy fixed points table on the window (bounded input).
pub fn homotopy_fixed_points(
    action: &CyclicAction,
    window: &TateWindow,
) -> Result<GradedGroupTable, CyclicError> {
    action.validate()?;
    if action.order == 1 {
        return table_from_complex(&action.complex, window.lo, window.hi);
    }
    let Some((_, s_hi)) = full_s_range(action, window.lo - 1, window.hi) else {
        return Ok(GradedGroupTable::zero_on(window.lo, window.hi));
    };
    let fix = splice_complex(action, 0, s_hi.max(0), window.lo - 1, window.hi + 1);
    table_from_complex(&fix, window.lo, window.hi)
}

/// Exact Tate table on the window (bounded input): homology of the Hom
/// complex over the full doubly infinite complete resolution.
pub fn tate(action: &CyclicAction, window: &TateWindow) -> Result<GradedGroupTable, CyclicError> {
    action.validate()?;
    let mut table = tate_unlabeled(action, window)?;
    decorate_trivial_labels(action, &mut table);
    Ok(table)
}

fn tate_unlabeled(
    action: &CyclicAction,
    window: &TateWindow,
) -> Result<GradedGroupTable, CyclicError> {
    if action.order == 1 {
        return Ok(GradedGroupTable::zero_on(window.lo, window.hi));
    }
    let Some((s_lo, s_hi)) = full_s_range(action, window.lo - 1, window.hi + 1) else {
        return Ok(GradedGroupTable::zero_on(window.lo, window.hi));
    };
    let total = splice_complex(action, s_lo, s_hi, window.lo - 1, window.hi + 1);
    table_from_complex(&total, window.lo, window.hi)
}

/// Generator labels for the classical periodic patterns on a trivial rank-1
/// action concentrated in degree 0: t (degree -2), e (degree -1, odd p),
/// s (degree -1, p = 2).
fn decorate_trivial_labels(action: &CyclicAction, table: &mut GradedGroupTable) {
    let c = &action.complex;
    let concentrated = c.min_degree() == Some(0) && c.max_degree() == Some(0) && c.rank(0) == 1;
    if !concentrated || !action.is_trivial() {
        return;
    }
    let prime_field = match c.ring {
        RingTag::Mod(m) if is_prime(m) && m == action.order => Some(m),
        _ => None,
    };
    for (&i, group) in &table.entries {
        if group.is_zero() {
            continue;
        }
        let label = match prime_field {
            Some(2) => format!("s^{}", -i),
            Some(_) => {
                if i.rem_euclid(2) == 0 {
                    format!("t^{}", -i / 2)
                } else {
                    format!("t^{} e", (-i - 1) / 2)
                }
            }
            None => {
                if i.rem_euclid(2) == 0 {
                    format!("t^{}", -i / 2)
                } else {
                    continue;
                }
            }
        };
        table.labels.insert(i, label);
    }
}

// ---------------------------------------------------------------------------
// complete resolution as a complex with action
// ---------------------------------------------------------------------------

/// The 2-periodic complete resolution of Z over Z[C_n] on a degree window:
/// a rank-n free module in every degree, differentials alternating between
/// sigma - 1 (odd degree) and N (even degree), regular-representation action.
pub fn complete_resolution(n: u64, deg_lo: i64, deg_hi: i64) -> CyclicAction {
    let size = n as usize;
    let mut perm = IntMatrix::zeros(size, size);
    for j in 0..size {
        perm[((j + 1) % size, j)] = 1.into();
    }
    let norm = {
        let mut acc = IntMatrix::identity(size);
        let mut sum = acc.clone();
        for _ in 1..size {
            acc = acc.mul(&perm);
            sum = sum.add(&acc);
        }
        sum
    };
    let shift_minus_one = perm.sub(&IntMatrix::identity(size));
    let mut ranks = BTreeMap::new();
    let mut d = BTreeMap::new();
    let mut sigma = BTreeMap::new();
    for i in deg_lo..=deg_hi {
        ranks.insert(i, size);
        sigma.insert(i, perm.clone());
        if i > deg_lo {
            d.insert(
                i,
                if i.rem_euclid(2) == 1 {
                    shift_minus_one.clone()
                } else {
                    norm.clone()
                },
            );
        }
    }
    CyclicAction {
        complex: ChainComplex {
            ring: RingTag::Int,
            ranks,
            d,
        },
        order: n,
        sigma,
    }
}

// ---------------------------------------------------------------------------
// norm fiber sequence
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NormFiberReport {
    pub orbit: GradedGroupTable,
    pub fixed: GradedGroupTable,
    pub tate: GradedGroupTable,
    /// exactness defects (all trivial when the check passes) at the
    /// fixed-point, Tate and orbit nodes, per window degree
    pub defects: BTreeMap<i64, Vec<FinGenAb>>,
}

/// Verify exactness of
///   ... -> H_i(X_hG) --Nm--> H_i(X^hG) -> Tate_i -> H_{i-1}(X_hG) -> ...
/// on the window, using the explicit chain-level norm, inclusion and
/// projection maps of the spliced total complex.
pub fn norm_fiber_check(
    action: &CyclicAction,
    window: &TateWindow,
) -> Result<NormFiberReport, CyclicError> {
    action.validate()?;
    if action.order == 1 {
        let table = table_from_complex(&action.complex, window.lo, window.hi)?;
        return Ok(NormFiberReport {
            orbit: table.clone(),
            fixed: table,
            tate: GradedGroupTable::zero_on(window.lo, window.hi),
            defects: BTreeMap::new(),
        });
    }
    let ring = action.complex.ring;
    let (deg_lo, deg_hi) = (window.lo - 2, window.hi + 2);
    let Some((s_lo, s_hi)) = full_s_range(action, deg_lo, deg_hi) else {
        let zero = GradedGroupTable::zero_on(window.lo, window.hi);
        return Ok(NormFiberReport {
            orbit: zero.clone(),
            fixed: zero.clone(),
            tate: zero,
            defects: BTreeMap::new(),
        });
    };
    let s_hi = s_hi.max(0);
    let s_lo = s_lo.min(-1);
    let fix = splice_complex(action, 0, s_hi, deg_lo, deg_hi);
    let total = splice_complex(action, s_lo, s_hi, deg_lo, deg_hi);
    // orbit complex: the s <= -1 part reindexed down by one, differentials
    // negated so that the norm is a chain map on the nose
    let part = splice_complex(action, s_lo, -1, deg_lo, deg_hi);
    let orbit = ChainComplex {
        ring,
        ranks: part.ranks.iter().map(|(&i, &r)| (i - 1, r)).collect(),
        d: part.d.iter().map(|(&i, m)| (i - 1, m.neg())).collect(),
    };

    // chain-level maps per degree, written against the block layouts
    let block_offset = |blocks: &[(i64, i64, usize)], s: i64, t: i64| -> Option<usize> {
        let mut off = 0;
        for &(s2, t2, r) in blocks {
            if s2 == s && t2 == t {
                return Some(off);
            }
            off += r;
        }
        None
    };
    let norm_mat = |i: i64| -> IntMatrix {
        // orbit block (s = -1, t = i) -> fixed block (s = 0, t = i), via N
        let src = splice_blocks(action, s_lo, -1, i + 1);
        let dst = splice_blocks(action, 0, s_hi, i);
        let mut m = IntMatrix::zeros(fix.rank(i), orbit.rank(i));
        if let (Some(coff), Some(roff)) = (block_offset(&src, -1, i), block_offset(&dst, 0, i)) {
            let n = action.norm_element(i);
            for a in 0..n.rows() {
                for b in 0..n.cols() {
                    if !n[(a, b)].is_zero() {
                        m[(roff + a, coff + b)] = n[(a, b)].clone();
                    }
                }
            }
        }
        m
    };
    let incl_mat = |i: i64| -> IntMatrix {
        let src = splice_blocks(action, 0, s_hi, i);
        let dst = splice_blocks(action, s_lo, s_hi, i);
        let mut m = IntMatrix::zeros(total.rank(i), fix.rank(i));
        let mut coff = 0;
        for &(s, t, r) in &src {
            let roff = block_offset(&dst, s, t).expect("fixed block missing in total");
            for a in 0..r {
                m[(roff + a, coff + a)] = 1.into();
            }
            coff += r;
        }
        m
    };
    let proj_mat = |i: i64| -> IntMatrix {
        // tate_i -> orbit_{i-1} (the s <= -1 part in the same total degree)
        let src = splice_blocks(action, s_lo, s_hi, i);
        let dst = splice_blocks(action, s_lo, -1, i);
        let mut m = IntMatrix::zeros(orbit.rank(i - 1), total.rank(i));
        let mut coff = 0;
        for &(s, t, r) in &src {
            if let Some(roff) = block_offset(&dst, s, t) {
                for a in 0..r {
                    m[(roff + a, coff + a)] = 1.into();
                }
            }
            coff += r;
        }
        m
    };

    let mut fix_h: BTreeMap<i64, HomologyPresentation> = BTreeMap::new();
    let mut tate_h: BTreeMap<i64, HomologyPresentation> = BTreeMap::new();
    let mut orbit_h: BTreeMap<i64, HomologyPresentation> = BTreeMap::new();
    for i in window.lo - 1..=window.hi + 1 {
        fix_h.insert(i, homology_presentation(&fix, i)?);
        tate_h.insert(i, homology_presentation(&total, i)?);
        orbit_h.insert(i, homology_presentation(&orbit, i)?);
    }
    let induced = |m: &IntMatrix, src: &HomologyPresentation, dst: &HomologyPresentation| {
        induced_on_homology(m, src, dst).ok_or_else(|| {
            CyclicError::InvalidAction("chain map does not preserve cycles".into())
        })
    };
    let localize = |g: FinGenAb| match ring {
        RingTag::Local(p) => g.localize_at(p),
        _ => g,
    };

    let mut defects = BTreeMap::new();
    for i in window.degrees() {
        let nm_i = induced(&norm_mat(i), &orbit_h[&i], &fix_h[&i])?;
        let incl_i = induced(&incl_mat(i), &fix_h[&i], &tate_h[&i])?;
        let proj_i = induced(&proj_mat(i), &tate_h[&i], &orbit_h[&(i - 1)])?;
        let nm_prev = induced(&norm_mat(i - 1), &orbit_h[&(i - 1)], &fix_h[&(i - 1)])?;

        let nodes = [
            exactness_defect(&nm_i, &incl_i, &fix_h[&i].pres, &tate_h[&i].pres),
            exactness_defect(&incl_i, &proj_i, &tate_h[&i].pres, &orbit_h[&(i - 1)].pres),
            exactness_defect(&proj_i, &nm_prev, &orbit_h[&(i - 1)].pres, &fix_h[&(i - 1)].pres),
        ];
        let mut here = Vec::with_capacity(3);
        for node in nodes {
            let defect = localize(node.ok_or(CyclicError::ExactnessFailure {
                degree: i,
                defect: FinGenAb::free(1),
            })?);
            if !defect.is_zero() {
                return Err(CyclicError::ExactnessFailure { degree: i, defect });
            }
            here.push(defect);
        }
        defects.insert(i, here);
    }

    Ok(NormFiberReport {
        orbit: GradedGroupTable::new(
            window
                .degrees()
                .map(|i| (i, localize(orbit_h[&i].group())))
                .collect(),
        ),
        fixed: GradedGroupTable::new(
            window
                .degrees()
                .map(|i| (i, localize(fix_h[&i].group())))
                .collect(),
        ),
        tate: GradedGroupTable::new(
            window
                .degrees()
                .map(|i| (i, localize(tate_h[&i].group())))
                .collect(),
        ),
        defects,
    })
}

// ---------------------------------------------------------------------------
// residual constructions for C_{p^2}
// ---------------------------------------------------------------------------

fn prime_square_root(order: u64) -> Result<u64, CyclicError> {
    for p in 2..=order {
        if p * p == order && is_prime(p) {
            return Ok(p);
        }
        if p * p > order {
            break;
        }
    }
    Err(CyclicError::OrderNotPrimeSquare(order))
}

/// Per-X-degree matrices shared by the residual constructions.
struct ResidualPieces<'a> {
    action: &'a CyclicAction,
    p: u64,
}

impl ResidualPieces<'_> {
    fn pu(&self) -> usize {
        self.p as usize
    }

    fn rank(&self, t: i64) -> usize {
        self.action.complex.rank(t)
    }

    /// generator of the C_p subgroup on X
    fn sigma(&self, t: i64) -> IntMatrix {
        self.action.generator_power(t, self.p)
    }

    fn sigma_inv(&self, t: i64) -> IntMatrix {
        self.action.generator_power(t, self.p * (self.p - 1))
    }

    fn norm_cp(&self, t: i64) -> IntMatrix {
        let s = self.sigma(t);
        let mut acc = IntMatrix::identity(self.rank(t));
        let mut sum = acc.clone();
        for _ in 1..self.p {
            acc = acc.mul(&s);
            sum = sum.add(&acc);
        }
        sum
    }

    /// id (x) (gamma - 1) on the reduced basis {x (x) gamma^j}_0..p-1 with
    /// the balanced reduction x (x) gamma^p = (sigma^{-1} x) (x) 1.
    fn gamma_minus_one(&self, t: i64) -> IntMatrix {
        let (r, pu) = (self.rank(t), self.pu());
        let si = self.sigma_inv(t);
        let mut m = IntMatrix::zeros(r * pu, r * pu);
        for j in 0..pu {
            for k in 0..r {
                m[(j * r + k, j * r + k)] = BigInt::from(-1);
            }
            if j + 1 < pu {
                for k in 0..r {
                    m[((j + 1) * r + k, j * r + k)] = 1.into();
                }
            } else {
                for a in 0..r {
                    for b in 0..r {
                        if !si[(a, b)].is_zero() {
                            m[(a, j * r + b)] = si[(a, b)].clone();
                        }
                    }
                }
            }
        }
        m
    }

    /// id (x) N_{p^2} collapses to N_{C_p} spread over all cosets.
    fn big_norm(&self, t: i64) -> IntMatrix {
        let (r, pu) = (self.rank(t), self.pu());
        let n = self.norm_cp(t);
        let mut m = IntMatrix::zeros(r * pu, r * pu);
        for jd in 0..pu {
            for js in 0..pu {
                for a in 0..r {
                    for b in 0..r {
                        if !n[(a, b)].is_zero() {
                            m[(jd * r + a, js * r + b)] = n[(a, b)].clone();
                        }
                    }
                }
            }
        }
        m
    }

    /// (gamma - 1)^* on value tuples (v_0, ..., v_{p-1}) with v_p = sigma v_0.
    fn gamma_star(&self, t: i64) -> IntMatrix {
        let (r, pu) = (self.rank(t), self.pu());
        let sg = self.sigma(t);
        let mut m = IntMatrix::zeros(r * pu, r * pu);
        for j in 0..pu {
            for k in 0..r {
                m[(j * r + k, j * r + k)] = BigInt::from(-1);
            }
            if j + 1 < pu {
                for k in 0..r {
                    m[(j * r + k, (j + 1) * r + k)] = 1.into();
                }
            } else {
                for a in 0..r {
                    for b in 0..r {
                        if !sg[(a, b)].is_zero() {
                            m[(j * r + a, b)] = sg[(a, b)].clone();
                        }
                    }
                }
            }
        }
        m
    }

    /// diagonal residual generator on the tensor model:
    /// e_{j,k} -> (g x_k) in slot j+1, wrap slot twisted by sigma^{-1}.
    fn tensor_generator(&self, t: i64) -> IntMatrix {
        let (r, pu) = (self.rank(t), self.pu());
        let gm = self.action.generator(t);
        let wrap = self.sigma_inv(t).mul(&gm);
        let mut m = IntMatrix::zeros(r * pu, r * pu);
        for j in 0..pu {
            let target = if j + 1 < pu { &gm } else { &wrap };
            let jd = (j + 1) % pu;
            for a in 0..r {
                for b in 0..r {
                    if !target[(a, b)].is_zero() {
                        m[(jd * r + a, j * r + b)] = target[(a, b)].clone();
                    }
                }
            }
        }
        m
    }

    /// conjugation residual generator on the Hom model:
    /// (gamma . f)(gamma^j) = g f(gamma^{j-1}), wrap via g sigma^{-1}.
    fn hom_generator(&self, t: i64) -> IntMatrix {
        let (r, pu) = (self.rank(t), self.pu());
        let gm = self.action.generator(t);
        let wrap = gm.mul(&self.sigma_inv(t));
        let mut m = IntMatrix::zeros(r * pu, r * pu);
        for j in 0..pu {
            let (js, target) = if j >= 1 { (j - 1, &gm) } else { (pu - 1, &wrap) };
            for a in 0..r {
                for b in 0..r {
                    if !target[(a, b)].is_zero() {
                        m[(j * r + a, js * r + b)] = target[(a, b)].clone();
                    }
                }
            }
        }
        m
    }
}

/// Assemble a residual total complex with action from a block layout.
fn assemble_residual(
    pieces: &ResidualPieces,
    blocks_of: impl Fn(i64) -> Vec<(i64, i64, usize)>,
    deg_lo: i64,
    deg_hi: i64,
    horizontal_lowers_s: bool,
    generator_of: impl Fn(&ResidualPieces, i64) -> IntMatrix,
    horizontal_word: impl Fn(&ResidualPieces, i64, i64) -> IntMatrix,
) -> CyclicAction {
    let pu = pieces.pu();
    let ring = pieces.action.complex.ring;
    let mut ranks = BTreeMap::new();
    let mut d = BTreeMap::new();
    let mut res_sigma = BTreeMap::new();
    for i in deg_lo..=deg_hi {
        let bl = blocks_of(i);
        let total: usize = bl.iter().map(|&(_, _, r)| r * pu).sum();
        ranks.insert(i, total);
        if total == 0 {
            continue;
        }
        let dims: Vec<usize> = bl.iter().map(|&(_, _, r)| r * pu).collect();
        let gens: Vec<IntMatrix> = bl.iter().map(|&(_, t, _)| generator_of(pieces, t)).collect();
        let mut grid: Vec<Vec<Option<&IntMatrix>>> = vec![vec![None; bl.len()]; bl.len()];
        for (bi, gmat) in gens.iter().enumerate() {
            grid[bi][bi] = Some(gmat);
        }
        res_sigma.insert(i, IntMatrix::from_blocks(&dims, &dims, &grid));
    }
    for i in deg_lo + 1..=deg_hi {
        let src = blocks_of(i);
        let dst = blocks_of(i - 1);
        if src.is_empty() || dst.is_empty() {
            continue;
        }
        let row_dims: Vec<usize> = dst.iter().map(|&(_, _, r)| r * pu).collect();
        let col_dims: Vec<usize> = src.iter().map(|&(_, _, r)| r * pu).collect();
        let mut grid: Vec<Vec<Option<IntMatrix>>> = vec![vec![None; src.len()]; dst.len()];
        for (sj, &(s, t, _)) in src.iter().enumerate() {
            if let Some(di) = dst.iter().position(|&(s2, t2, _)| s2 == s && t2 == t - 1) {
                let dx = pieces.action.complex.differential(t);
                if !dx.is_zero() {
                    let m = IntMatrix::identity(pu).kronecker(&dx);
                    grid[di][sj] = Some(if s.rem_euclid(2) == 0 { m } else { m.neg() });
                }
            }
            let s2 = if horizontal_lowers_s { s - 1 } else { s + 1 };
            if let Some(di) = dst.iter().position(|&(s3, t3, _)| s3 == s2 && t3 == t) {
                let word_index = if horizontal_lowers_s { s } else { s + 1 };
                let w = horizontal_word(pieces, word_index, t);
                if !w.is_zero() {
                    grid[di][sj] = Some(w);
                }
            }
        }
        let refs: Vec<Vec<Option<&IntMatrix>>> = grid
            .iter()
            .map(|row| row.iter().map(|b| b.as_ref()).collect())
            .collect();
        let m = IntMatrix::from_blocks(&row_dims, &col_dims, &refs);
        if !m.is_empty() && !m.is_zero() {
            d.insert(i, m);
        }
    }
    CyclicAction {
        complex: ChainComplex { ring, ranks, d },
        order: pieces.p,
        sigma: res_sigma,
    }
}

/// Strict chain model of X_{hC_p} with its residual C_{p^2}/C_p-action:
/// X tensored over Z[C_p] with the standard resolution of Z over Z[C_{p^2}]
/// restricted to C_p (free of rank p per degree), truncated above `cutoff`.
/// The big-group generator acts diagonally; its p-th power is literally the
/// identity on the balanced tensor, so the result is an honest C_p-action.
pub fn residual_orbits(action: &CyclicAction, cutoff: i64) -> Result<CyclicAction, CyclicError> {
    action.validate()?;
    let p = prime_square_root(action.order)?;
    let x = &action.complex;
    let Some(xlo) = x.min_degree() else {
        return Ok(CyclicAction::trivial(ChainComplex::zero(x.ring), p));
    };
    let pieces = ResidualPieces { action, p };
    let blocks_of = |degree: i64| -> Vec<(i64, i64, usize)> {
        (0..=degree - xlo)
            .filter_map(|s| {
                let t = degree - s;
                let r = x.rank(t);
                (r > 0).then_some((s, t, r))
            })
            .collect()
    };
    let out = assemble_residual(
        &pieces,
        blocks_of,
        xlo,
        cutoff,
        true,
        |p, t| p.tensor_generator(t),
        |p, s, t| {
            if s.rem_euclid(2) == 1 {
                p.gamma_minus_one(t)
            } else {
                p.big_norm(t)
            }
        },
    );
    out.validate()?;
    Ok(out)
}

/// Strict chain model of X^{hC_p} with its residual action: C_p-linear maps
/// out of the restricted resolution with the conjugation action, brutally
/// truncated below `-cutoff`. Bounded above.
pub fn residual_fixed_points(
    action: &CyclicAction,
    cutoff: i64,
) -> Result<CyclicAction, CyclicError> {
    action.validate()?;
    let p = prime_square_root(action.order)?;
    let x = &action.complex;
    let Some(xhi) = x.max_degree() else {
        return Ok(CyclicAction::trivial(ChainComplex::zero(x.ring), p));
    };
    let pieces = ResidualPieces { action, p };
    let blocks_of = |degree: i64| -> Vec<(i64, i64, usize)> {
        (0..=xhi - degree)
            .filter_map(|s| {
                let t = degree + s;
                let r = x.rank(t);
                (r > 0).then_some((s, t, r))
            })
            .collect()
    };
    let out = assemble_residual(
        &pieces,
        blocks_of,
        -cutoff,
        xhi,
        false,
        |p, t| p.hom_generator(t),
        |p, s, t| {
            if s.rem_euclid(2) == 1 {
                p.gamma_star(t)
            } else {
                p.norm_star_public(t)
            }
        },
    );
    out.validate()?;
    Ok(out)
}

impl ResidualPieces<'_> {
    /// N^* spreads N_{C_p} over all value slots, like the tensor side.
    fn norm_star_public(&self, t: i64) -> IntMatrix {
        self.big_norm(t)
    }
}

/// Strict model of X^{tC_p} with its residual action: Hom over the complete
/// resolution of the big group restricted to C_p, truncated to total degrees
/// [-cutoff, cutoff].
fn residual_tate_model(action: &CyclicAction, cutoff: i64) -> Result<CyclicAction, CyclicError> {
    let p = prime_square_root(action.order)?;
    let x = &action.complex;
    let (Some(xlo), Some(xhi)) = (x.min_degree(), x.max_degree()) else {
        return Ok(CyclicAction::trivial(ChainComplex::zero(x.ring), p));
    };
    let pieces = ResidualPieces { action, p };
    let blocks_of = |degree: i64| -> Vec<(i64, i64, usize)> {
        (xlo - degree..=xhi - degree)
            .filter_map(|s| {
                let t = degree + s;
                let r = x.rank(t);
                (r > 0).then_some((s, t, r))
            })
            .collect()
    };
    let out = assemble_residual(
        &pieces,
        blocks_of,
        -cutoff,
        cutoff,
        false,
        |p, t| p.hom_generator(t),
        |p, s, t| {
            if s.rem_euclid(2) == 1 {
                p.gamma_star(t)
            } else {
                p.norm_star_public(t)
            }
        },
    );
    out.validate()?;
    Ok(out)
}

// ---------------------------------------------------------------------------
// stabilized checks
// ---------------------------------------------------------------------------

fn stabilized_tate(
    build: impl Fn(i64) -> Result<CyclicAction, CyclicError>,
    window: &TateWindow,
) -> Result<(GradedGroupTable, StabilizationCertificate), CyclicError> {
    let cutoffs: Vec<i64> = (0..3)
        .map(|k| window.truncation + k * window.stride)
        .collect();
    let mut tables = Vec::new();
    for &c in &cutoffs {
        let residual = build(c)?;
        tables.push(tate_unlabeled(&residual, window)?);
    }
    for later in &tables[1..] {
        if let Some(degree) = tables[0].first_difference(later) {
            return Err(CyclicError::StabilizationFailure { degree, cutoffs });
        }
    }
    Ok((tables.swap_remove(0), StabilizationCertificate { cutoffs }))
}

/// Tate orbit lemma check: the Tate construction of the residual action on
/// X_{hC_p} vanishes in the window, with a stabilization certificate.
pub fn tate_orbit_check(
    action: &CyclicAction,
    window: &TateWindow,
) -> Result<VanishingReport, CyclicError> {
    let (table, certificate) = stabilized_tate(|c| residual_orbits(action, c), window)?;
    if let Some((&degree, group)) = table.entries.iter().find(|(_, g)| !g.is_zero()) {
        return Err(CyclicError::NonVanishing {
            degree,
            group: group.clone(),
        });
    }
    Ok(VanishingReport { table, certificate })
}

/// Tate fixpoint lemma check, dual to `tate_orbit_check`.
pub fn tate_fixpoint_check(
    action: &CyclicAction,
    window: &TateWindow,
) -> Result<VanishingReport, CyclicError> {
    let (table, certificate) = stabilized_tate(|c| residual_fixed_points(action, c), window)?;
    if let Some((&degree, group)) = table.entries.iter().find(|(_, g)| !g.is_zero()) {
        return Err(CyclicError::NonVanishing {
            degree,
            group: group.clone(),
        });
    }
    Ok(VanishingReport { table, certificate })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IteratedTateReport {
    pub direct: GradedGroupTable,
    pub iterated: GradedGroupTable,
    pub certificate: StabilizationCertificate,
}

/// Compare X^{tC_{p^2}} with (X^{tC_p})^{hC_p}: the direct Tate table
/// against homotopy fixed points of the strict residual Tate model.
pub fn iterated_tate_check(
    action: &CyclicAction,
    window: &TateWindow,
) -> Result<IteratedTateReport, CyclicError> {
    action.validate()?;
    prime_square_root(action.order)?;
    let direct = tate_unlabeled(action, window)?;

    let cutoffs: Vec<i64> = (0..3)
        .map(|k| window.truncation + k * window.stride)
        .collect();
    let mut tables = Vec::new();
    for &c in &cutoffs {
        let residual = residual_tate_model(action, c)?;
        tables.push(homotopy_fixed_points(&residual, window)?);
    }
    for later in &tables[1..] {
        if let Some(degree) = tables[0].first_difference(later) {
            return Err(CyclicError::StabilizationFailure { degree, cutoffs });
        }
    }
    let iterated = tables.swap_remove(0);
    if let Some(degree) = direct.first_difference(&iterated) {
        return Err(CyclicError::Mismatch {
            degree,
            left: direct.group(degree),
            right: iterated.group(degree),
        });
    }
    Ok(IteratedTateReport {
        direct,
        iterated,
        certificate: StabilizationCertificate { cutoffs },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zvec(pairs: &[(i64, FinGenAb)]) -> GradedGroupTable {
        GradedGroupTable::new(pairs.iter().cloned().collect())
    }

    fn regular_representation(ring: RingTag, n: u64) -> CyclicAction {
        let size = n as usize;
        let mut perm = IntMatrix::zeros(size, size);
        for j in 0..size {
            perm[((j + 1) % size, j)] = 1.into();
        }
        let mut sigma = BTreeMap::new();
        sigma.insert(0, perm);
        CyclicAction {
            complex: ChainComplex::concentrated(ring, 0, size),
            order: n,
            sigma,
        }
    }

    #[test]
    fn tate_of_trivial_z_is_p_torsion_in_even_degrees() {
        for p in [2u64, 3, 5] {
            let action = CyclicAction::trivial(
                ChainComplex::concentrated(RingTag::Int, 0, 1),
                p,
            );
            let w = TateWindow::new(-6, 6).unwrap();
            let t = tate(&action, &w).unwrap();
            for i in -6..=6 {
                if i % 2 == 0 {
                    assert_eq!(t.group(i), FinGenAb::cyclic(p), "p={p} i={i}");
                } else {
                    assert!(t.group(i).is_zero(), "p={p} i={i}");
                }
            }
            assert_eq!(t.labels.get(&-2), Some(&"t^1".to_string()));
        }
    }

    #[test]
    fn tate_of_trivial_fp_is_one_dimensional_everywhere() {
        for p in [2u64, 3] {
            let action = CyclicAction::trivial(
                ChainComplex::concentrated(RingTag::Mod(p), 0, 1),
                p,
            );
            let w = TateWindow::new(-5, 5).unwrap();
            let t = tate(&action, &w).unwrap();
            for i in -5..=5 {
                assert_eq!(t.group(i), FinGenAb::cyclic(p), "p={p} i={i}");
            }
        }
    }

    #[test]
    fn tate_vanishes_on_induced_modules() {
        for n in [2u64, 3, 4, 6] {
            let action = regular_representation(RingTag::Int, n);
            let w = TateWindow::new(-4, 4).unwrap();
            let t = tate(&action, &w).unwrap();
            assert!(t.is_identically_zero(), "n={n}: {:?}", t.entries);
        }
    }

    #[test]
    fn orbits_and_fixed_points_of_trivial_z() {
        let action = CyclicAction::trivial(ChainComplex::concentrated(RingTag::Int, 0, 1), 4);
        let w = TateWindow::new(-4, 5).unwrap();
        let orb = homotopy_orbits(&action, &w).unwrap();
        assert_eq!(orb.group(0), FinGenAb::free(1));
        for i in 1..=5 {
            if i % 2 == 1 {
                assert_eq!(orb.group(i), FinGenAb::cyclic(4), "H_{i}");
            } else {
                assert!(orb.group(i).is_zero(), "H_{i}");
            }
        }
        for i in -4..0 {
            assert!(orb.group(i).is_zero());
        }
        let fix = homotopy_fixed_points(&action, &w).unwrap();
        assert_eq!(fix.group(0), FinGenAb::free(1));
        for i in 1..=4 {
            assert!(fix.group(i).is_zero());
            if i % 2 == 0 {
                assert_eq!(fix.group(-i), FinGenAb::cyclic(4), "H_-{i}");
            } else {
                assert!(fix.group(-i).is_zero(), "H_-{i}");
            }
        }
    }

    #[test]
    fn orbits_and_fixed_points_of_induced_concentrate_in_degree_zero() {
        let action = regular_representation(RingTag::Int, 3);
        let w = TateWindow::new(-3, 3).unwrap();
        let orb = homotopy_orbits(&action, &w).unwrap();
        let fix = homotopy_fixed_points(&action, &w).unwrap();
        for i in -3..=3 {
            let expect = if i == 0 { FinGenAb::free(1) } else { FinGenAb::zero() };
            assert_eq!(orb.group(i), expect, "orbit H_{i}");
            assert_eq!(fix.group(i), expect, "fixed H_{i}");
        }
    }

    #[test]
    fn fixed_points_of_trivial_fp() {
        let action = CyclicAction::trivial(ChainComplex::concentrated(RingTag::Mod(3), 0, 1), 3);
        let w = TateWindow::new(-4, 2).unwrap();
        let fix = homotopy_fixed_points(&action, &w).unwrap();
        for i in -4..=0 {
            assert_eq!(fix.group(i), FinGenAb::cyclic(3), "H_{i}");
        }
        assert!(fix.group(1).is_zero());
    }

    #[test]
    fn order_one_degenerates() {
        let c = ChainComplex::two_term(RingTag::Int, 1, IntMatrix::from_rows(vec![vec![5]]));
        let action = CyclicAction::trivial(c.clone(), 1);
        let w = TateWindow::new(-2, 2).unwrap();
        assert!(tate(&action, &w).unwrap().is_identically_zero());
        let orb = homotopy_orbits(&action, &w).unwrap();
        assert_eq!(orb.group(0), FinGenAb::cyclic(5));
        assert_eq!(
            homotopy_fixed_points(&action, &w).unwrap().group(0),
            FinGenAb::cyclic(5)
        );
    }

    #[test]
    fn complete_resolution_is_exact_in_the_interior() {
        for n in [1u64, 2, 3] {
            let res = complete_resolution(n, -4, 4);
            res.validate().unwrap();
            for i in -3..=3 {
                assert!(
                    res.complex.homology(i).unwrap().is_zero(),
                    "n={n} H_{i} nonzero"
                );
            }
        }
    }

    #[test]
    fn norm_check_trivial_and_induced() {
        let action = CyclicAction::trivial(ChainComplex::concentrated(RingTag::Int, 0, 1), 2);
        let w = TateWindow::new(-3, 3).unwrap();
        let report = norm_fiber_check(&action, &w).unwrap();
        // Tate values agree with the direct computation
        let t = tate(&action, &w).unwrap();
        assert_eq!(report.tate.entries, t.entries);

        let induced = regular_representation(RingTag::Int, 4);
        let report = norm_fiber_check(&induced, &w).unwrap();
        assert!(report.tate.is_identically_zero());
        assert_eq!(report.orbit.group(0), FinGenAb::free(1));
        assert_eq!(report.fixed.group(0), FinGenAb::free(1));
    }

    #[test]
    fn residual_orbits_of_trivial_fp() {
        // H_*(residual complex) = H_*(C_p; F_p) = F_p in each degree >= 0
        let action = CyclicAction::trivial(ChainComplex::concentrated(RingTag::Mod(2), 0, 1), 4);
        let r = residual_orbits(&action, 6).unwrap();
        r.validate().unwrap();
        for i in 0..=5 {
            assert_eq!(r.complex.homology(i).unwrap(), FinGenAb::cyclic(2), "H_{i}");
        }
        // and for Z coefficients: H_0 = Z, H_odd = Z/p
        let action = CyclicAction::trivial(ChainComplex::concentrated(RingTag::Int, 0, 1), 9);
        let r = residual_orbits(&action, 5).unwrap();
        assert_eq!(r.complex.homology(0).unwrap(), FinGenAb::free(1));
        assert_eq!(r.complex.homology(1).unwrap(), FinGenAb::cyclic(3));
        assert!(r.complex.homology(2).unwrap().is_zero());
        assert_eq!(r.complex.homology(3).unwrap(), FinGenAb::cyclic(3));
    }

    #[test]
    fn residual_fixed_points_of_trivial_fp() {
        let action = CyclicAction::trivial(ChainComplex::concentrated(RingTag::Mod(2), 0, 1), 4);
        let r = residual_fixed_points(&action, 6).unwrap();
        r.validate().unwrap();
        for i in -5..=0 {
            assert_eq!(r.complex.homology(i).unwrap(), FinGenAb::cyclic(2), "H_{i}");
        }
    }

    #[test]
    fn orbit_lemma_on_trivial_coefficients() {
        let action = CyclicAction::trivial(ChainComplex::concentrated(RingTag::Mod(2), 0, 1), 4);
        let w = TateWindow::new(-3, 3).unwrap().with_truncation(8).unwrap();
        let report = tate_orbit_check(&action, &w).unwrap();
        assert!(report.table.is_identically_zero());
        assert_eq!(report.certificate.cutoffs, vec![8, 10, 12]);
    }

    #[test]
    fn fixpoint_lemma_on_trivial_coefficients() {
        let action = CyclicAction::trivial(ChainComplex::concentrated(RingTag::Mod(2), 0, 1), 4);
        let w = TateWindow::new(-3, 3).unwrap().with_truncation(8).unwrap();
        let report = tate_fixpoint_check(&action, &w).unwrap();
        assert!(report.table.is_identically_zero());
    }

    #[test]
    fn iterated_tate_on_trivial_z_c4() {
        let action = CyclicAction::trivial(ChainComplex::concentrated(RingTag::Int, 0, 1), 4);
        let w = TateWindow::new(-2, 2).unwrap().with_truncation(9).unwrap();
        let report = iterated_tate_check(&action, &w).unwrap();
        assert_eq!(report.direct.group(0), FinGenAb::cyclic(4));
        assert_eq!(report.iterated.group(0), FinGenAb::cyclic(4));
        assert_eq!(report.direct.group(-2), FinGenAb::cyclic(4));
        assert!(report.direct.group(1).is_zero());
    }

    #[test]
    fn rational_vanishing() {
        // order invertible in the ring: Tate vanishes identically
        let action = CyclicAction::trivial(ChainComplex::concentrated(RingTag::Mod(5), 0, 1), 3);
        let w = TateWindow::new(-4, 4).unwrap();
        assert!(tate(&action, &w).unwrap().is_identically_zero());
        let action = CyclicAction::trivial(ChainComplex::concentrated(RingTag::Local(5), 0, 2), 6);
        assert!(tate(&action, &w).unwrap().is_identically_zero());
    }

    #[test]
    fn composite_order_tate() {
        let action = CyclicAction::trivial(ChainComplex::concentrated(RingTag::Int, 0, 1), 6);
        let w = TateWindow::new(-4, 4).unwrap();
        let t = tate(&action, &w).unwrap();
        for i in -4..=4 {
            if i % 2 == 0 {
                assert_eq!(t.group(i), FinGenAb::cyclic(6));
            } else {
                assert!(t.group(i).is_zero());
            }
        }
        let _ = zvec(&[]);
    }
}
