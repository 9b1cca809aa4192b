//! Bounded chain complexes of finitely generated free modules, with maps,
//! mapping cones, shifts, brutal truncations and tensor products.
//!
//! Grading is homological throughout: d_i : X_i -> X_{i-1}. Cohomological
//! indices are reported by callers as H^i = H_{-i}.

use crate::abelian::{homology_at, FinGenAb, LinalgError, RingTag};
use crate::matrix::IntMatrix;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("invariant violated at degree {degree}: {kind}")]
    Violation { degree: i64, kind: String },
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(RingTag, RingTag),
    #[error("dimension mismatch at degree {0}")]
    DimensionMismatch(i64),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A bounded complex of free modules over `ring`. Degrees not present in
/// `ranks` have rank zero; `d` maps degree i to the matrix of d_i.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainComplex {
    pub ring: RingTag,
    pub ranks: BTreeMap<i64, usize>,
    #[serde(default)]
    pub d: BTreeMap<i64, IntMatrix>,
}

impl ChainComplex {
    pub fn zero(ring: RingTag) -> Self {
        ChainComplex {
            ring,
            ranks: BTreeMap::new(),
            d: BTreeMap::new(),
        }
    }

    /// A free module concentrated in a single degree.
    pub fn concentrated(ring: RingTag, degree: i64, rank: usize) -> Self {
        let mut ranks = BTreeMap::new();
        if rank > 0 {
            ranks.insert(degree, rank);
        }
        ChainComplex {
            ring,
            ranks,
            d: BTreeMap::new(),
        }
    }

    /// Two-term complex `upper --m--> lower` in degrees (degree, degree - 1).
    pub fn two_term(ring: RingTag, degree: i64, m: IntMatrix) -> Self {
        let mut ranks = BTreeMap::new();
        ranks.insert(degree, m.cols());
        ranks.insert(degree - 1, m.rows());
        let mut d = BTreeMap::new();
        d.insert(degree, m);
        ChainComplex { ring, ranks, d }
    }

    pub fn rank(&self, degree: i64) -> usize {
        self.ranks.get(&degree).copied().unwrap_or(0)
    }

    /// Lowest degree with nonzero rank, if any.
    pub fn min_degree(&self) -> Option<i64> {
        self.ranks.iter().find(|(_, &r)| r > 0).map(|(&i, _)| i)
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.ranks
            .iter()
            .rev()
            .find(|(_, &r)| r > 0)
            .map(|(&i, _)| i)
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.values().sum()
    }

    /// The differential d_degree : X_degree -> X_{degree-1}, materialized as a
    /// zero matrix of the right shape when absent.
    pub fn differential(&self, degree: i64) -> IntMatrix {
        match self.d.get(&degree) {
            Some(m) => m.clone(),
            None => IntMatrix::zeros(self.rank(degree - 1), self.rank(degree)),
        }
    }

    /// Check that all stored matrices have shapes matching `ranks` and that
    /// d . d = 0 over the ring. Reports the first failing degree.
    pub fn validate(&self) -> Result<(), ComplexError> {
        for (&i, m) in &self.d {
            if m.rows() != self.rank(i - 1) || m.cols() != self.rank(i) {
                return Err(ComplexError::Violation {
                    degree: i,
                    kind: format!(
                        "d_{i} is {}x{} but ranks demand {}x{}",
                        m.rows(),
                        m.cols(),
                        self.rank(i - 1),
                        self.rank(i)
                    ),
                });
            }
        }
        for &i in self.ranks.keys() {
            let above = self.differential(i + 1);
            let here = self.differential(i);
            if !self.ring.matrix_is_zero(&here.mul(&above)) {
                return Err(ComplexError::Violation {
                    degree: i,
                    kind: format!("d_{i} . d_{} != 0", i + 1),
                });
            }
        }
        Ok(())
    }

    pub fn homology(&self, degree: i64) -> Result<FinGenAb, ComplexError> {
        Ok(homology_at(
            &self.differential(degree + 1),
            &self.differential(degree),
            self.ring,
        )?)
    }

    pub fn homology_range(
        &self,
        lo: i64,
        hi: i64,
    ) -> Result<BTreeMap<i64, FinGenAb>, ComplexError> {
        (lo..=hi).map(|i| Ok((i, self.homology(i)?))).collect()
    }

    /// Degree shift: X[k]_i = X_{i-k}, with differential (-1)^k d.
    pub fn shifted(&self, k: i64) -> Self {
        let flip = k.rem_euclid(2) == 1;
        ChainComplex {
            ring: self.ring,
            ranks: self.ranks.iter().map(|(&i, &r)| (i + k, r)).collect(),
            d: self
                .d
                .iter()
                .map(|(&i, m)| (i + k, if flip { m.neg() } else { m.clone() }))
                .collect(),
        }
    }

    /// Brutal truncation keeping degrees <= n.
    pub fn truncate_above(&self, n: i64) -> Self {
        ChainComplex {
            ring: self.ring,
            ranks: self
                .ranks
                .iter()
                .filter(|(&i, _)| i <= n)
                .map(|(&i, &r)| (i, r))
                .collect(),
            d: self
                .d
                .iter()
                .filter(|(&i, _)| i <= n)
                .map(|(&i, m)| (i, m.clone()))
                .collect(),
        }
    }

    /// Brutal truncation keeping degrees >= n.
    pub fn truncate_below(&self, n: i64) -> Self {
        ChainComplex {
            ring: self.ring,
            ranks: self
                .ranks
                .iter()
                .filter(|(&i, _)| i >= n)
                .map(|(&i, &r)| (i, r))
                .collect(),
            d: self
                .d
                .iter()
                .filter(|(&i, _)| i > n)
                .map(|(&i, m)| (i, m.clone()))
                .collect(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, ComplexError> {
        if self.ring != other.ring {
            return Err(ComplexError::RingMismatch(self.ring, other.ring));
        }
        let degrees: std::collections::BTreeSet<i64> = self
            .ranks
            .keys()
            .chain(other.ranks.keys())
            .copied()
            .collect();
        let mut ranks = BTreeMap::new();
        let mut d = BTreeMap::new();
        for &i in &degrees {
            let r = self.rank(i) + other.rank(i);
            if r > 0 {
                ranks.insert(i, r);
            }
            let a = self.differential(i);
            let b = other.differential(i);
            let m = IntMatrix::from_blocks(
                &[a.rows(), b.rows()],
                &[a.cols(), b.cols()],
                &[vec![Some(&a), None], vec![None, Some(&b)]],
            );
            if !m.is_empty() {
                d.insert(i, m);
            }
        }
        Ok(ChainComplex {
            ring: self.ring,
            ranks,
            d,
        })
    }

    /// Graded tensor product with Koszul signs:
    /// d(x (x) y) = dx (x) y + (-1)^{|x|} x (x) dy.
    /// The basis of (X (x) Y)_n is ordered by ascending degree of the first
    /// factor, then lexicographically on basis pairs within each block.
    pub fn tensor(&self, other: &Self) -> Result<Self, ComplexError> {
        if self.ring != other.ring {
            return Err(ComplexError::RingMismatch(self.ring, other.ring));
        }
        let (Some(xlo), Some(xhi), Some(ylo), Some(yhi)) = (
            self.min_degree(),
            self.max_degree(),
            other.min_degree(),
            other.max_degree(),
        ) else {
            return Ok(ChainComplex::zero(self.ring));
        };

        let block_dims = |n: i64| -> Vec<(i64, usize, usize)> {
            (xlo..=xhi)
                .filter_map(|i| {
                    let (rx, ry) = (self.rank(i), other.rank(n - i));
                    (rx > 0 && ry > 0 && n - i >= ylo && n - i <= yhi)
                        .then_some((i, rx, ry))
                })
                .collect()
        };

        let mut ranks = BTreeMap::new();
        for n in xlo + ylo..=xhi + yhi {
            let r: usize = block_dims(n).iter().map(|(_, rx, ry)| rx * ry).sum();
            if r > 0 {
                ranks.insert(n, r);
            }
        }

        let mut d = BTreeMap::new();
        for n in xlo + ylo + 1..=xhi + yhi {
            let src = block_dims(n);
            let dst = block_dims(n - 1);
            if src.is_empty() || dst.is_empty() {
                continue;
            }
            let row_dims: Vec<usize> = dst.iter().map(|(_, rx, ry)| rx * ry).collect();
            let col_dims: Vec<usize> = src.iter().map(|(_, rx, ry)| rx * ry).collect();
            let mut blocks: Vec<Vec<Option<IntMatrix>>> = vec![vec![None; src.len()]; dst.len()];
            for (sj, &(i, rx, ry)) in src.iter().enumerate() {
                // dx (x) y lands in block (i - 1, n - i)
                if let Some(di) = dst.iter().position(|&(j, _, _)| j == i - 1) {
                    let dx = self.differential(i);
                    if !dx.is_zero() {
                        blocks[di][sj] = Some(dx.kronecker(&IntMatrix::identity(ry)));
                    }
                }
                // (-1)^i x (x) dy lands in block (i, n - 1 - i)
                if let Some(di) = dst.iter().position(|&(j, _, _)| j == i) {
                    let dy = other.differential(n - i);
                    if !dy.is_zero() {
                        let m = IntMatrix::identity(rx).kronecker(&dy);
                        blocks[di][sj] =
                            Some(if i.rem_euclid(2) == 0 { m } else { m.neg() });
                    }
                }
            }
            let refs: Vec<Vec<Option<&IntMatrix>>> = blocks
                .iter()
                .map(|row| row.iter().map(|b| b.as_ref()).collect())
                .collect();
            let m = IntMatrix::from_blocks(&row_dims, &col_dims, &refs);
            if !m.is_empty() && !m.is_zero() {
                d.insert(n, m);
            }
        }
        let out = ChainComplex {
            ring: self.ring,
            ranks,
            d,
        };
        debug_assert!(out.validate().is_ok());
        Ok(out)
    }
}

/// A presentation of H_i(C): `cycle_basis` has columns spanning the cycle
/// lattice (mod-m kernel lattice over Z/m), and the quotient by `pres.rels`
/// is the homology group. Used to push chain maps down to homology.
#[derive(Clone, Debug)]
pub struct HomologyPresentation {
    pub degree: i64,
    pub cycle_basis: IntMatrix,
    pub pres: crate::abelian::Presentation,
}

impl HomologyPresentation {
    pub fn group(&self) -> FinGenAb {
        self.pres.group()
    }
}

/// Present H_degree(c) by a cycle-lattice basis and boundary relations.
pub fn homology_presentation(
    c: &ChainComplex,
    degree: i64,
) -> Result<HomologyPresentation, ComplexError> {
    use crate::snf::{column_span_basis, kernel_basis, solve};
    let d_out = c.differential(degree);
    let d_in = c.differential(degree + 1);
    let (cycles, boundary_rels) = match c.ring {
        RingTag::Int | RingTag::Local(_) => {
            let k = kernel_basis(&d_out);
            let s = solve(&k, &d_in).ok_or(LinalgError::CompositionNonzero)?;
            (k, s)
        }
        RingTag::Mod(m) => {
            let n = d_out.rows();
            let aug = d_out.hstack(&IntMatrix::scalar(n, m as i64));
            let w = kernel_basis(&aug);
            let gens = w.select_rows(&(0..d_out.cols()).collect::<Vec<_>>());
            let k = column_span_basis(&gens);
            let rels_ambient = d_in.hstack(&IntMatrix::scalar(d_out.cols(), m as i64));
            let s = solve(&k, &rels_ambient).ok_or(LinalgError::CompositionNonzero)?;
            (k, s)
        }
    };
    let gens = cycles.cols();
    Ok(HomologyPresentation {
        degree,
        cycle_basis: cycles,
        pres: crate::abelian::Presentation::new(gens, boundary_rels),
    })
}

/// The matrix of the map induced on homology generators by a chain-level
/// matrix that carries cycles to cycles. `None` if it does not.
pub fn induced_on_homology(
    chain_map: &IntMatrix,
    src: &HomologyPresentation,
    dst: &HomologyPresentation,
) -> Option<IntMatrix> {
    crate::snf::solve(&dst.cycle_basis, &chain_map.mul(&src.cycle_basis))
}

/// A degreewise map of complexes commuting with the differentials.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainMap {
    pub source: ChainComplex,
    pub target: ChainComplex,
    pub components: BTreeMap<i64, IntMatrix>,
}

impl ChainMap {
    pub fn new(
        source: ChainComplex,
        target: ChainComplex,
        components: BTreeMap<i64, IntMatrix>,
    ) -> Self {
        ChainMap {
            source,
            target,
            components,
        }
    }

    pub fn zero(source: ChainComplex, target: ChainComplex) -> Self {
        Self::new(source, target, BTreeMap::new())
    }

    pub fn identity(c: &ChainComplex) -> Self {
        let components = c
            .ranks
            .iter()
            .filter(|(_, &r)| r > 0)
            .map(|(&i, &r)| (i, IntMatrix::identity(r)))
            .collect();
        Self::new(c.clone(), c.clone(), components)
    }

    pub fn component(&self, degree: i64) -> IntMatrix {
        match self.components.get(&degree) {
            Some(m) => m.clone(),
            None => IntMatrix::zeros(self.target.rank(degree), self.source.rank(degree)),
        }
    }

    pub fn validate(&self) -> Result<(), ComplexError> {
        if self.source.ring != self.target.ring {
            return Err(ComplexError::RingMismatch(
                self.source.ring,
                self.target.ring,
            ));
        }
        for (&i, m) in &self.components {
            if m.rows() != self.target.rank(i) || m.cols() != self.source.rank(i) {
                return Err(ComplexError::DimensionMismatch(i));
            }
        }
        let degrees: std::collections::BTreeSet<i64> = self
            .source
            .ranks
            .keys()
            .chain(self.target.ranks.keys())
            .copied()
            .collect();
        for &i in &degrees {
            let lhs = self.component(i - 1).mul(&self.source.differential(i));
            let rhs = self.target.differential(i).mul(&self.component(i));
            if !self.source.ring.matrices_equal(&lhs, &rhs) {
                return Err(ComplexError::Violation {
                    degree: i,
                    kind: "map does not commute with differentials".into(),
                });
            }
        }
        Ok(())
    }

    /// The mapping cone: C_i = X_{i-1} (+) Y_i with d(x, y) = (-dx, fx + dy).
    pub fn cone(&self) -> Result<ChainComplex, ComplexError> {
        self.validate()?;
        let x = &self.source;
        let y = &self.target;
        let degrees: std::collections::BTreeSet<i64> = x
            .ranks
            .keys()
            .map(|&i| i + 1)
            .chain(y.ranks.keys().copied())
            .collect();
        let mut ranks = BTreeMap::new();
        let mut d = BTreeMap::new();
        for &i in &degrees {
            let r = x.rank(i - 1) + y.rank(i);
            if r > 0 {
                ranks.insert(i, r);
            }
            let dx = x.differential(i - 1).neg();
            let f = self.component(i - 1);
            let dy = y.differential(i);
            let m = IntMatrix::from_blocks(
                &[dx.rows(), dy.rows()],
                &[dx.cols(), dy.cols()],
                &[vec![Some(&dx), None], vec![Some(&f), Some(&dy)]],
            );
            if !m.is_empty() {
                d.insert(i, m);
            }
        }
        let out = ChainComplex {
            ring: x.ring,
            ranks,
            d,
        };
        debug_assert!(out.validate().is_ok());
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FinGenAb;

    fn mult_by(ring: RingTag, p: i64) -> ChainComplex {
        ChainComplex::two_term(ring, 1, IntMatrix::from_rows(vec![vec![p]]))
    }

    #[test]
    fn validate_reports_first_bad_degree() {
        assert!(ChainComplex::zero(RingTag::Int).validate().is_ok());
        assert!(mult_by(RingTag::Int, 5).validate().is_ok());

        let mut ranks = BTreeMap::new();
        ranks.insert(0, 1);
        ranks.insert(1, 1);
        ranks.insert(2, 1);
        let mut d = BTreeMap::new();
        d.insert(1, IntMatrix::from_rows(vec![vec![1]]));
        d.insert(2, IntMatrix::from_rows(vec![vec![1]]));
        let bad = ChainComplex {
            ring: RingTag::Int,
            ranks: ranks.clone(),
            d,
        };
        match bad.validate() {
            Err(ComplexError::Violation { degree, .. }) => assert_eq!(degree, 1),
            other => panic!("expected violation, got {other:?}"),
        }
        // the same shape with a differential divisible by 2 is fine over Z/2
        let mut d = BTreeMap::new();
        d.insert(1, IntMatrix::from_rows(vec![vec![2]]));
        d.insert(2, IntMatrix::from_rows(vec![vec![1]]));
        let ok_mod2 = ChainComplex {
            ring: RingTag::Mod(2),
            ranks,
            d,
        };
        assert!(ok_mod2.validate().is_ok());
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let x = mult_by(RingTag::Int, 3);
        let cone = ChainMap::identity(&x).cone().unwrap();
        cone.validate().unwrap();
        for i in -1..4 {
            assert!(cone.homology(i).unwrap().is_zero(), "H_{i} nonzero");
        }
    }

    #[test]
    fn cone_of_zero_splits() {
        let x = ChainComplex::concentrated(RingTag::Int, 0, 2);
        let y = ChainComplex::concentrated(RingTag::Int, 0, 3);
        let cone = ChainMap::zero(x, y).cone().unwrap();
        assert_eq!(cone.rank(1), 2);
        assert_eq!(cone.rank(0), 3);
    }

    #[test]
    fn cone_of_mult_p() {
        // cone(Z --p--> Z in degree 0) has H_0 = Z/p
        let z = ChainComplex::concentrated(RingTag::Int, 0, 1);
        let mut comps = BTreeMap::new();
        comps.insert(0, IntMatrix::from_rows(vec![vec![7]]));
        let f = ChainMap::new(z.clone(), z, comps);
        let cone = f.cone().unwrap();
        assert_eq!(cone.homology(0).unwrap(), FinGenAb::cyclic(7));
        assert!(cone.homology(1).unwrap().is_zero());
    }

    #[test]
    fn truncation() {
        let x = mult_by(RingTag::Int, 2); // degrees 0, 1
        assert_eq!(x.truncate_below(0), x);
        assert_eq!(x.truncate_above(1), x);
        let t = x.truncate_above(0);
        assert_eq!(t.rank(1), 0);
        assert_eq!(t.rank(0), 1);
        let t = x.truncate_below(1);
        assert_eq!(t.rank(0), 0);
        assert!(t.d.is_empty());
    }

    #[test]
    fn tensor_unit_and_mult_p_squared() {
        let x = mult_by(RingTag::Int, 5);
        let unit = ChainComplex::concentrated(RingTag::Int, 0, 1);
        let t = x.tensor(&unit).unwrap();
        assert_eq!(t.ranks, x.ranks);
        assert_eq!(t.differential(1), x.differential(1));

        // (Z --p--> Z) (x) (Z --p--> Z): H_0 = Z/p, H_1 = Z/p, H_2 = 0
        let t = x.tensor(&x).unwrap();
        t.validate().unwrap();
        assert_eq!(t.homology(0).unwrap(), FinGenAb::cyclic(5));
        assert_eq!(t.homology(1).unwrap(), FinGenAb::cyclic(5));
        assert!(t.homology(2).unwrap().is_zero());
    }

    #[test]
    fn json_round_trip_bit_exact() {
        let x = mult_by(RingTag::Mod(4), 2);
        let s = serde_json::to_string(&x).unwrap();
        let back: ChainComplex = serde_json::from_str(&s).unwrap();
        assert_eq!(x, back);
        assert_eq!(s, serde_json::to_string(&back).unwrap());
    }
}
