//! Smith normal form over Z with unimodular transforms, plus the lattice
//! routines built on it: kernels, exact linear solves, column-span bases,
//! and Gaussian elimination mod p as a fast path for prime fields.

use crate::matrix::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Decomposition `m = u * d * v` with `u`, `v` unimodular and `d` diagonal
/// with nonnegative entries satisfying d_1 | d_2 | ... . The inverses are
/// tracked during elimination so kernels and solves come cheap.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl SmithDecomposition {
    /// The nonzero diagonal entries d_1 | d_2 | ... | d_rank.
    pub fn divisors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

struct Worker {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Worker {
    fn row_swap(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_cols(i, j);
        self.u_inv.swap_rows(i, j);
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_rows(i, j);
        self.v_inv.swap_cols(i, j);
    }

    fn row_negate(&mut self, i: usize) {
        for j in 0..self.a.cols() {
            let e = &mut self.a[(i, j)];
            *e = -std::mem::take(e);
        }
        for r in 0..self.u.rows() {
            let e = &mut self.u[(r, i)];
            *e = -std::mem::take(e);
        }
        for c in 0..self.u_inv.cols() {
            let e = &mut self.u_inv[(i, c)];
            *e = -std::mem::take(e);
        }
    }

    /// row_i += c * row_j on `a`.
    fn row_addmul(&mut self, i: usize, j: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for k in 0..self.a.cols() {
            let add = c * &self.a[(j, k)];
            self.a[(i, k)] += add;
        }
        // u <- u * E^{-1}: col_j -= c * col_i
        for r in 0..self.u.rows() {
            let sub = c * &self.u[(r, i)];
            self.u[(r, j)] -= sub;
        }
        // u_inv <- E * u_inv: row_i += c * row_j
        for k in 0..self.u_inv.cols() {
            let add = c * &self.u_inv[(j, k)];
            self.u_inv[(i, k)] += add;
        }
    }

    /// col_i += c * col_j on `a`.
    fn col_addmul(&mut self, i: usize, j: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for k in 0..self.a.rows() {
            let add = c * &self.a[(k, j)];
            self.a[(k, i)] += add;
        }
        // v <- F^{-1} * v: row_j -= c * row_i
        for k in 0..self.v.cols() {
            let sub = c * &self.v[(i, k)];
            self.v[(j, k)] -= sub;
        }
        // v_inv <- v_inv * F: col_i += c * col_j
        for r in 0..self.v_inv.rows() {
            let add = c * &self.v_inv[(r, j)];
            self.v_inv[(r, i)] += add;
        }
    }

    /// Replace rows (i, j) by (x*row_i + y*row_j, -(b/g)*row_i + (a/g)*row_j)
    /// where g = gcd(a, b) = x*a + y*b; the 2x2 transform has determinant 1.
    fn row_gcd_op(&mut self, i: usize, j: usize, a: &BigInt, b: &BigInt) {
        let e = a.extended_gcd(b);
        let (g, x, y) = (e.gcd, e.x, e.y);
        let p = -(b / &g);
        let q = a / &g;
        // a-rows
        for k in 0..self.a.cols() {
            let ri = self.a[(i, k)].clone();
            let rj = self.a[(j, k)].clone();
            self.a[(i, k)] = &x * &ri + &y * &rj;
            self.a[(j, k)] = &p * &ri + &q * &rj;
        }
        // u: cols (i, j) <- (q*col_i - p*col_j, -y*col_i + x*col_j)
        for r in 0..self.u.rows() {
            let ci = self.u[(r, i)].clone();
            let cj = self.u[(r, j)].clone();
            self.u[(r, i)] = &q * &ci - &p * &cj;
            self.u[(r, j)] = -&y * &ci + &x * &cj;
        }
        // u_inv rows transform like a-rows
        for k in 0..self.u_inv.cols() {
            let ri = self.u_inv[(i, k)].clone();
            let rj = self.u_inv[(j, k)].clone();
            self.u_inv[(i, k)] = &x * &ri + &y * &rj;
            self.u_inv[(j, k)] = &p * &ri + &q * &rj;
        }
    }

    fn col_gcd_op(&mut self, i: usize, j: usize, a: &BigInt, b: &BigInt) {
        let e = a.extended_gcd(b);
        let (g, x, y) = (e.gcd, e.x, e.y);
        let p = -(b / &g);
        let q = a / &g;
        for k in 0..self.a.rows() {
            let ci = self.a[(k, i)].clone();
            let cj = self.a[(k, j)].clone();
            self.a[(k, i)] = &x * &ci + &y * &cj;
            self.a[(k, j)] = &p * &ci + &q * &cj;
        }
        // v rows (i, j) <- (q*row_i - p*row_j, -y*row_i + x*row_j)
        for k in 0..self.v.cols() {
            let ri = self.v[(i, k)].clone();
            let rj = self.v[(j, k)].clone();
            self.v[(i, k)] = &q * &ri - &p * &rj;
            self.v[(j, k)] = -&y * &ri + &x * &rj;
        }
        // v_inv cols transform like a-cols
        for r in 0..self.v_inv.rows() {
            let ci = self.v_inv[(r, i)].clone();
            let cj = self.v_inv[(r, j)].clone();
            self.v_inv[(r, i)] = &x * &ci + &y * &cj;
            self.v_inv[(r, j)] = &p * &ci + &q * &cj;
        }
    }
}

/// Smith normal form: returns (u, d, v) with m = u * d * v.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let rows = m.rows();
    let cols = m.cols();
    let mut w = Worker {
        a: m.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };

    let mut k = 0;
    while k < rows && k < cols {
        // pick the nonzero entry of smallest magnitude as pivot
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if !w.a[(i, j)].is_zero()
                    && pivot.is_none_or(|(pi, pj)| {
                        w.a[(i, j)].abs() < w.a[(pi, pj)].abs()
                    })
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        w.row_swap(k, pi);
        w.col_swap(k, pj);

        'clear: loop {
            for i in k + 1..rows {
                if w.a[(i, k)].is_zero() {
                    continue;
                }
                let (a, b) = (w.a[(k, k)].clone(), w.a[(i, k)].clone());
                if (&b % &a).is_zero() {
                    let q = -(&b / &a);
                    w.row_addmul(i, k, &q);
                } else {
                    w.row_gcd_op(k, i, &a, &b);
                }
            }
            for j in k + 1..cols {
                if w.a[(k, j)].is_zero() {
                    continue;
                }
                let (a, b) = (w.a[(k, k)].clone(), w.a[(k, j)].clone());
                if (&b % &a).is_zero() {
                    let q = -(&b / &a);
                    w.col_addmul(j, k, &q);
                } else {
                    w.col_gcd_op(k, j, &a, &b);
                    // the column op may have refilled column k below the pivot
                    continue 'clear;
                }
            }
            // both row k and column k are clear outside the pivot
            let mut offender = None;
            'search: for i in k + 1..rows {
                for j in k + 1..cols {
                    if !(&w.a[(i, j)] % &w.a[(k, k)]).is_zero() {
                        offender = Some(i);
                        break 'search;
                    }
                }
            }
            match offender {
                Some(i) => w.row_addmul(k, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a[(k, k)].is_negative() {
            w.row_negate(k);
        }
        k += 1;
    }

    SmithDecomposition {
        u: w.u,
        u_inv: w.u_inv,
        d: w.a,
        v: w.v,
        v_inv: w.v_inv,
        rank: k,
    }
}

/// Basis of the right kernel lattice {x : m x = 0}, as matrix columns.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let idx: Vec<usize> = (snf.rank..m.cols()).collect();
    snf.v_inv.select_columns(&idx)
}

/// Exact solve m * s = b over Z; `None` if no integer solution exists.
pub fn solve(m: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    assert_eq!(m.rows(), b.rows());
    let snf = smith_normal_form(m);
    let c = snf.u_inv.mul(b);
    let mut y = IntMatrix::zeros(m.cols(), b.cols());
    for j in 0..b.cols() {
        for i in 0..snf.rank {
            let (q, r) = c[(i, j)].div_rem(&snf.d[(i, i)]);
            if !r.is_zero() {
                return None;
            }
            y[(i, j)] = q;
        }
        for i in snf.rank..m.rows() {
            if !c[(i, j)].is_zero() {
                return None;
            }
        }
    }
    Some(snf.v_inv.mul(&y))
}

/// Basis for the column span lattice of m (the image of the map), as columns.
pub fn column_span_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let mut out = IntMatrix::zeros(m.rows(), snf.rank);
    for j in 0..snf.rank {
        let d = &snf.d[(j, j)];
        for i in 0..m.rows() {
            out[(i, j)] = &snf.u[(i, j)] * d;
        }
    }
    out
}

/// Rank over F_p via Gaussian elimination; fast path for prime rings.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> usize {
    let rows = m.rows();
    let cols = m.cols();
    if rows == 0 || cols == 0 {
        return 0;
    }
    let pb = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| {
                    let r = &m[(i, j)] % &pb;
                    let r = if r.is_negative() { r + &pb } else { r };
                    u64::try_from(r).unwrap()
                })
                .collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = mod_inverse(a[rank][col], p);
        for j in col..cols {
            a[rank][j] = a[rank][j] * inv % p;
        }
        for i in 0..rows {
            if i != rank && a[i][col] != 0 {
                let f = a[i][col];
                for j in col..cols {
                    a[i][j] = (a[i][j] + (p - f) * a[rank][j]) % p;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a != 0 mod p
    let mut result: u64 = 1;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_decomposition(m: &IntMatrix) {
        let snf = smith_normal_form(m);
        assert_eq!(&snf.u.mul(&snf.d).mul(&snf.v), m, "u*d*v != m");
        assert!(snf.u.mul(&snf.u_inv).is_identity());
        assert!(snf.v.mul(&snf.v_inv).is_identity());
        let divs = snf.divisors();
        for w in divs.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "divisibility chain broken");
        }
        for d in &divs {
            assert!(d.is_positive());
        }
        if m.rows() > 0 && m.rows() == m.cols() {
            let du = snf.u.determinant();
            assert!(du.abs().is_one(), "det(u) = {du}");
            let dv = snf.v.determinant();
            assert!(dv.abs().is_one(), "det(v) = {dv}");
        }
    }

    #[test]
    fn identity_and_scalar() {
        check_decomposition(&IntMatrix::identity(2));
        let snf = smith_normal_form(&IntMatrix::identity(2));
        assert!(snf.d.is_identity());

        let p = IntMatrix::from_rows(vec![vec![7]]);
        let snf = smith_normal_form(&p);
        assert_eq!(snf.d, p);
        check_decomposition(&p);
    }

    #[test]
    fn diag_2_3_gives_1_6() {
        // d_k = gcd of k x k minors: gcd(2,3) = 1, det = 6
        let m = IntMatrix::from_rows(vec![vec![2, 0], vec![0, 3]]);
        let snf = smith_normal_form(&m);
        assert_eq!(
            snf.divisors(),
            vec![BigInt::from(1), BigInt::from(6)]
        );
        check_decomposition(&m);
    }

    #[test]
    fn rectangular_and_zero() {
        let m = IntMatrix::from_rows(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let snf = smith_normal_form(&m);
        assert_eq!(
            snf.divisors(),
            vec![BigInt::from(2), BigInt::from(2), BigInt::from(156)]
        );
        check_decomposition(&m);
        check_decomposition(&IntMatrix::zeros(3, 2));
        check_decomposition(&IntMatrix::zeros(0, 4));
    }

    #[test]
    fn kernel_and_solve() {
        let m = IntMatrix::from_rows(vec![vec![1, 2, 3], vec![2, 4, 6]]);
        let k = kernel_basis(&m);
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).is_zero());

        let m = IntMatrix::from_rows(vec![vec![2, 0], vec![0, 3]]);
        let b = IntMatrix::from_rows(vec![vec![4], vec![9]]);
        let s = solve(&m, &b).unwrap();
        assert_eq!(m.mul(&s), b);
        let bad = IntMatrix::from_rows(vec![vec![1], vec![0]]);
        assert!(solve(&m, &bad).is_none());
    }

    #[test]
    fn mod_p_rank() {
        let m = IntMatrix::from_rows(vec![vec![1, 1], vec![1, 1]]);
        assert_eq!(rank_mod_p(&m, 2), 1);
        let m = IntMatrix::from_rows(vec![vec![2, 0], vec![0, 2]]);
        assert_eq!(rank_mod_p(&m, 2), 0);
        assert_eq!(rank_mod_p(&m, 3), 2);
    }
}
