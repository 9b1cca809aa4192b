//! Finitely generated abelian groups in canonical form, the coefficient
//! rings the library computes over, and homology of a pair of composable
//! integer matrices over each ring.

use crate::matrix::IntMatrix;
use crate::snf::{
    column_span_basis, is_prime, kernel_basis, rank_mod_p, smith_normal_form, solve,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use thiserror::Error;

/// Coefficient ring: Z, Z/m for m >= 2, or Z localized at a prime p.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RingTag {
    Int,
    Mod(u64),
    Local(u64),
}

impl RingTag {
    pub fn validate(&self) -> Result<(), LinalgError> {
        match self {
            RingTag::Int => Ok(()),
            RingTag::Mod(m) if *m >= 2 => Ok(()),
            RingTag::Mod(m) => Err(LinalgError::BadRing(format!("modulus {m} < 2"))),
            RingTag::Local(p) if is_prime(*p) => Ok(()),
            RingTag::Local(p) => Err(LinalgError::BadRing(format!("{p} is not prime"))),
        }
    }

    /// Is the integer n invertible in this ring?
    pub fn invertible(&self, n: u64) -> bool {
        match self {
            RingTag::Int => n == 1,
            RingTag::Mod(m) => num_integer::gcd(*m, n) == 1,
            RingTag::Local(p) => n % p != 0,
        }
    }

    /// Does the matrix vanish over this ring?
    pub fn matrix_is_zero(&self, m: &IntMatrix) -> bool {
        match self {
            RingTag::Int | RingTag::Local(_) => m.is_zero(),
            RingTag::Mod(q) => m.reduce_mod(*q).is_zero(),
        }
    }

    pub fn matrices_equal(&self, a: &IntMatrix, b: &IntMatrix) -> bool {
        if a.rows() != b.rows() || a.cols() != b.cols() {
            return false;
        }
        self.matrix_is_zero(&a.sub(b))
    }
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingTag::Int => write!(f, "Z"),
            RingTag::Mod(m) => write!(f, "Z/{m}"),
            RingTag::Local(p) => write!(f, "Z({p})"),
        }
    }
}

// JSON schema: "Z" | {"mod": m} | {"local": p}
impl Serialize for RingTag {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Mod {
            r#mod: u64,
        }
        #[derive(Serialize)]
        struct Local {
            local: u64,
        }
        match self {
            RingTag::Int => "Z".serialize(ser),
            RingTag::Mod(m) => Mod { r#mod: *m }.serialize(ser),
            RingTag::Local(p) => Local { local: *p }.serialize(ser),
        }
    }
}

impl<'de> Deserialize<'de> for RingTag {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Name(String),
            Mod { r#mod: u64 },
            Local { local: u64 },
        }
        let tag = match Repr::deserialize(de)? {
            Repr::Name(s) if s == "Z" => RingTag::Int,
            Repr::Name(s) => return Err(D::Error::custom(format!("unknown ring {s:?}"))),
            Repr::Mod { r#mod } => RingTag::Mod(r#mod),
            Repr::Local { local } => RingTag::Local(local),
        };
        tag.validate().map_err(D::Error::custom)?;
        Ok(tag)
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("d_out * d_in != 0 over the ring")]
    CompositionNonzero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid ring: {0}")]
    BadRing(String),
}

/// Finitely generated abelian group in canonical form: free rank plus
/// elementary divisors d_1 | d_2 | ... with each d_i >= 2.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinGenAb {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl FinGenAb {
    pub fn zero() -> Self {
        FinGenAb {
            rank: 0,
            torsion: vec![],
        }
    }

    pub fn free(rank: usize) -> Self {
        FinGenAb {
            rank,
            torsion: vec![],
        }
    }

    pub fn cyclic(n: u64) -> Self {
        assert!(n >= 1);
        if n == 1 {
            Self::zero()
        } else {
            FinGenAb {
                rank: 0,
                torsion: vec![BigInt::from(n)],
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.rank > 0 {
            None
        } else {
            Some(self.torsion.iter().product())
        }
    }

    /// Quotient Z^ambient / (column span of rels), in canonical form.
    pub fn quotient(ambient: usize, rels: &IntMatrix) -> Self {
        assert_eq!(rels.rows(), ambient);
        let snf = smith_normal_form(rels);
        let torsion: Vec<BigInt> = snf
            .divisors()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        FinGenAb {
            rank: ambient - snf.rank,
            torsion,
        }
    }

    /// Tensor with Z localized at p: keep the free part, reduce each
    /// elementary divisor to its p-part.
    pub fn localize_at(&self, p: u64) -> Self {
        let pb = BigInt::from(p);
        let torsion: Vec<BigInt> = self
            .torsion
            .iter()
            .map(|d| {
                let mut d = d.clone();
                let mut part = BigInt::one();
                while (&d % &pb).is_zero() {
                    d /= &pb;
                    part *= &pb;
                }
                part
            })
            .filter(|part| !part.is_one())
            .collect();
        FinGenAb {
            rank: self.rank,
            torsion,
        }
    }

    /// Every elementary divisor divides some power of n.
    pub fn is_n_power_torsion(&self, n: u64) -> bool {
        let nb = BigInt::from(n);
        self.torsion.iter().all(|d| {
            let mut d = d.clone();
            loop {
                let g = num_integer::gcd(d.clone(), nb.clone());
                if g.is_one() {
                    return d.is_one();
                }
                d /= g;
            }
        })
    }
}

impl fmt::Debug for FinGenAb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FinGenAb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = vec![];
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(u64),
    Big(String),
}

impl Serialize for FinGenAb {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            rank: usize,
            torsion: Vec<JsonInt>,
        }
        Repr {
            rank: self.rank,
            torsion: self
                .torsion
                .iter()
                .map(|d| match u64::try_from(d.clone()) {
                    Ok(v) => JsonInt::Small(v),
                    Err(_) => JsonInt::Big(d.to_string()),
                })
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for FinGenAb {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            rank: usize,
            torsion: Vec<JsonInt>,
        }
        let r = Repr::deserialize(de)?;
        let torsion = r
            .torsion
            .into_iter()
            .map(|d| match d {
                JsonInt::Small(v) => Ok(BigInt::from(v)),
                JsonInt::Big(s) => s
                    .parse::<BigInt>()
                    .map_err(|_| D::Error::custom("bad integer literal")),
            })
            .collect::<Result<_, _>>()?;
        Ok(FinGenAb {
            rank: r.rank,
            torsion,
        })
    }
}

/// Homology ker(d_out) / im(d_in) over the given ring. `d_in: A -> B`,
/// `d_out: B -> C`; requires d_out . d_in = 0 over the ring.
pub fn homology_at(
    d_in: &IntMatrix,
    d_out: &IntMatrix,
    ring: RingTag,
) -> Result<FinGenAb, LinalgError> {
    ring.validate()?;
    if d_out.cols() != d_in.rows() {
        return Err(LinalgError::DimensionMismatch(format!(
            "d_out has {} columns but d_in has {} rows",
            d_out.cols(),
            d_in.rows()
        )));
    }
    let composite = d_out.mul(d_in);
    if !ring.matrix_is_zero(&composite) {
        return Err(LinalgError::CompositionNonzero);
    }
    let b_dim = d_in.rows();
    match ring {
        RingTag::Int => Ok(homology_over_z(d_in, d_out)),
        RingTag::Local(p) => Ok(homology_over_z(d_in, d_out).localize_at(p)),
        RingTag::Mod(m) if is_prime(m) => {
            // vector space: dim = nullity(d_out) - rank(d_in)
            let dim = b_dim - rank_mod_p(d_out, m) - rank_mod_p(d_in, m);
            Ok(FinGenAb {
                rank: 0,
                torsion: vec![BigInt::from(m); dim],
            })
        }
        RingTag::Mod(m) => Ok(homology_mod_m(d_in, d_out, m)),
    }
}

fn homology_over_z(d_in: &IntMatrix, d_out: &IntMatrix) -> FinGenAb {
    let kernel = kernel_basis(d_out);
    // express the image inside the kernel lattice; solvable because the
    // kernel basis spans a saturated sublattice containing im(d_in)
    let s = solve(&kernel, d_in).expect("im(d_in) not inside ker(d_out)");
    FinGenAb::quotient(kernel.cols(), &s)
}

fn homology_mod_m(d_in: &IntMatrix, d_out: &IntMatrix, m: u64) -> FinGenAb {
    let b_dim = d_in.rows();
    let c_dim = d_out.rows();
    // L = {x : d_out x = 0 mod m}, via the integer kernel of [d_out | m I]
    let augmented = d_out.hstack(&IntMatrix::scalar(c_dim, m as i64));
    let w = kernel_basis(&augmented);
    let gens = w.select_rows(&(0..b_dim).collect::<Vec<_>>());
    let lattice = column_span_basis(&gens);
    // H = L / (im(d_in) + m Z^b)
    let rels_ambient = d_in.hstack(&IntMatrix::scalar(b_dim, m as i64));
    let s = solve(&lattice, &rels_ambient).expect("relations not inside mod-m kernel lattice");
    FinGenAb::quotient(lattice.cols(), &s)
}

/// Elementary divisors over Z localized at p: the p-power parts of the
/// integer elementary divisors (units dropped), plus the matrix rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizedSnf {
    pub p_divisors: Vec<BigInt>,
    pub rank: usize,
}

pub fn localized_snf(m: &IntMatrix, p: u64) -> LocalizedSnf {
    assert!(is_prime(p), "{p} is not prime");
    let snf = smith_normal_form(m);
    let rank = snf.rank;
    let pb = BigInt::from(p);
    let p_divisors = snf
        .divisors()
        .into_iter()
        .map(|mut d| {
            let mut part = BigInt::one();
            while (&d % &pb).is_zero() {
                d /= &pb;
                part *= &pb;
            }
            part
        })
        .filter(|part| !part.is_one())
        .collect();
    LocalizedSnf { p_divisors, rank }
}

/// A finitely presented abelian group Z^gens / (column span of rels).
/// Ring relations (m I for Z/m) are baked into `rels` by the caller.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub gens: usize,
    pub rels: IntMatrix,
}

impl Presentation {
    pub fn new(gens: usize, rels: IntMatrix) -> Self {
        assert_eq!(rels.rows(), gens);
        Presentation { gens, rels }
    }

    pub fn group(&self) -> FinGenAb {
        FinGenAb::quotient(self.gens, &self.rels)
    }

    /// Does the generator-level matrix descend to a map of quotients?
    pub fn map_is_well_defined(f: &IntMatrix, src: &Presentation, dst: &Presentation) -> bool {
        f.rows() == dst.gens
            && f.cols() == src.gens
            && solve(&dst.rels, &f.mul(&src.rels)).is_some()
    }
}

/// Defect of exactness at Q for P --f--> Q --g--> R given on generators.
/// Returns `None` when g . f is not zero in R (the sequence is not even a
/// complex); otherwise the group ker(g) / im(f), which is trivial iff the
/// sequence is exact at Q.
pub fn exactness_defect(
    f: &IntMatrix,
    g: &IntMatrix,
    q: &Presentation,
    r: &Presentation,
) -> Option<FinGenAb> {
    assert_eq!(f.rows(), q.gens);
    assert_eq!(g.cols(), q.gens);
    assert_eq!(g.rows(), r.gens);
    // g . f must vanish in R
    solve(&r.rels, &g.mul(f))?;
    // pull ker(g : Q -> R) back to a lattice L in Z^{gens(Q)}
    let stacked = g.hstack(&r.rels.neg());
    let w = kernel_basis(&stacked);
    let gens = w.select_rows(&(0..q.gens).collect::<Vec<_>>());
    let lattice = column_span_basis(&gens);
    // defect = L / (im f + rels of Q)
    let inside = f.hstack(&q.rels);
    let s = solve(&lattice, &inside)
        .expect("image not contained in kernel lattice despite g.f = 0");
    Some(FinGenAb::quotient(lattice.cols(), &s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cokernel_of_p() {
        // Z --p--> Z --0--> 0 : homology is Z/p
        let d_in = IntMatrix::from_rows(vec![vec![5]]);
        let d_out = IntMatrix::zeros(0, 1);
        let h = homology_at(&d_in, &d_out, RingTag::Int).unwrap();
        assert_eq!(h, FinGenAb::cyclic(5));
    }

    #[test]
    fn free_rank_one() {
        let d_in = IntMatrix::zeros(1, 0);
        let d_out = IntMatrix::zeros(0, 1);
        let h = homology_at(&d_in, &d_out, RingTag::Int).unwrap();
        assert_eq!(h, FinGenAb::free(1));
    }

    #[test]
    fn composition_must_vanish() {
        let d_in = IntMatrix::from_rows(vec![vec![1]]);
        let d_out = IntMatrix::from_rows(vec![vec![1]]);
        assert_eq!(
            homology_at(&d_in, &d_out, RingTag::Int),
            Err(LinalgError::CompositionNonzero)
        );
        // but 2 * 2 = 4 = 0 over Z/4, and ker(2) = im(2) = {0, 2}
        let two = IntMatrix::from_rows(vec![vec![2]]);
        let h = homology_at(&two, &two, RingTag::Mod(4)).unwrap();
        assert!(h.is_zero());
    }

    #[test]
    fn mod_m_composite() {
        // Z/6: x -> 2x, then kernel of 3x
        let d_in = IntMatrix::from_rows(vec![vec![2]]);
        let d_out = IntMatrix::from_rows(vec![vec![3]]);
        let h = homology_at(&d_in, &d_out, RingTag::Mod(6)).unwrap();
        // ker(3: Z/6 -> Z/6) = {0, 2, 4} ~ Z/3... wait: 3x = 0 mod 6 iff x even
        // im(2) = {0, 2, 4}: H = 0
        assert!(h.is_zero());
    }

    #[test]
    fn localized_snf_examples() {
        let m = IntMatrix::from_rows(vec![vec![6, 0], vec![0, 4]]);
        let l = localized_snf(&m, 2);
        assert_eq!(l.p_divisors, vec![BigInt::from(2), BigInt::from(4)]);
        assert_eq!(l.rank, 2);

        let id = IntMatrix::identity(2);
        let l = localized_snf(&id, 3);
        assert!(l.p_divisors.is_empty());
        assert_eq!(l.rank, 2);

        let p2 = IntMatrix::from_rows(vec![vec![9]]);
        let l = localized_snf(&p2, 3);
        assert_eq!(l.p_divisors, vec![BigInt::from(9)]);
    }

    #[test]
    fn localization_of_homology() {
        // coker(diag(6, 4)) = Z/2 + Z/12; at p = 2 this is Z/2 + Z/4
        let d_in = IntMatrix::from_rows(vec![vec![6, 0], vec![0, 4]]);
        let d_out = IntMatrix::zeros(0, 2);
        let h = homology_at(&d_in, &d_out, RingTag::Local(2)).unwrap();
        assert_eq!(h.rank, 0);
        assert_eq!(h.torsion, vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn canonical_form_display() {
        let g = FinGenAb {
            rank: 2,
            torsion: vec![BigInt::from(2), BigInt::from(6)],
        };
        assert_eq!(g.to_string(), "Z^2 + Z/2 + Z/6");
        assert_eq!(FinGenAb::zero().to_string(), "0");
        assert!(g.is_n_power_torsion(6));
        assert!(!g.is_n_power_torsion(2));
    }

    #[test]
    fn exactness_defect_detects_failure() {
        // Z --2--> Z --0--> 0 is not exact at the middle (defect Z/2),
        // Z --1--> Z --0--> 0 is exact.
        let q = Presentation::new(1, IntMatrix::zeros(1, 0));
        let r = Presentation::new(0, IntMatrix::zeros(0, 0));
        let two = IntMatrix::from_rows(vec![vec![2]]);
        let g = IntMatrix::zeros(0, 1);
        let defect = exactness_defect(&two, &g, &q, &r).unwrap();
        assert_eq!(defect, FinGenAb::cyclic(2));
        let one = IntMatrix::from_rows(vec![vec![1]]);
        let defect = exactness_defect(&one, &g, &q, &r).unwrap();
        assert!(defect.is_zero());
    }
}
