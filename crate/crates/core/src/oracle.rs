//! Brute-force ground truth that shares no code path with the recursions:
//! a cyclic Jacobi eigensolver, fraction-free integer determinants, an exact
//! modular characteristic polynomial, and bracketing root isolation.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::charpoly::{CVertex, StructuredC, Weight};
use crate::error::{Error, Result};
use crate::graph::build_caterpillar;
use crate::matrix::{DenseMatrix, IntMatrix};
use crate::model::CaterpillarSpec;
use crate::poly::IntPolynomial;

pub const MAX_SWEEPS: usize = 100;
const OFF_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct EigenResult {
    /// Ascending.
    pub values: Vec<f64>,
    /// `max_i ||M v_i - lambda_i v_i||_inf`.
    pub residual: f64,
    pub sweeps: usize,
}

/// All eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
///
/// Sweeps stop once the off-diagonal Frobenius norm drops below
/// `1e-12 * ||M||_F`; hitting [`MAX_SWEEPS`] is an error.
pub fn sym_eigs(m: &DenseMatrix) -> Result<EigenResult> {
    assert!(m.is_square(), "eigensolver needs a square matrix");
    let n = m.rows();
    let mut a = m.clone();
    let mut v = DenseMatrix::identity(n);
    let scale = m.norm_frobenius();
    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= OFF_TOL * scale {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NonConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let values: Vec<f64> = order.iter().map(|&i| a[(i, i)]).collect();

    let mut residual: f64 = 0.0;
    for (&col, &lambda) in order.iter().zip(&values) {
        for i in 0..n {
            let mv: f64 = (0..n).map(|l| m[(i, l)] * v[(l, col)]).sum();
            residual = residual.max((mv - lambda * v[(i, col)]).abs());
        }
    }
    Ok(EigenResult {
        values,
        residual,
        sweeps,
    })
}

fn off_diagonal_norm(a: &DenseMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// Annihilates `a[p][q]` with a plane rotation, accumulating it into `v`.
fn rotate(a: &mut DenseMatrix, v: &mut DenseMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    if apq == 0.0 {
        return;
    }
    let n = a.rows();
    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let app = a[(p, p)];
    let aqq = a[(q, q)];
    a[(p, p)] = app - t * apq;
    a[(q, q)] = aqq + t * apq;
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let arp = a[(r, p)];
        let arq = a[(r, q)];
        let new_rp = c * arp - s * arq;
        let new_rq = s * arp + c * arq;
        a[(r, p)] = new_rp;
        a[(p, r)] = new_rp;
        a[(r, q)] = new_rq;
        a[(q, r)] = new_rq;
    }
    for r in 0..n {
        let vrp = v[(r, p)];
        let vrq = v[(r, q)];
        v[(r, p)] = c * vrp - s * vrq;
        v[(r, q)] = s * vrp + c * vrq;
    }
}

/// Second-smallest eigenvalue of the explicit Laplacian of `T(q)`.
pub fn mu_oracle(spec: &CaterpillarSpec) -> Result<f64> {
    let g = build_caterpillar(spec);
    if g.order() < 2 {
        return Err(Error::GraphTooSmall { needed: 2 });
    }
    Ok(sym_eigs(&g.laplacian())?.values[1])
}

/// Integer matrix with the same characteristic polynomial as `C`.
///
/// Conjugating by the diagonal matrix that is `1/sqrt(q_i)` at each leg row
/// turns a `(sqrt(q), sqrt(q))` pair into `q` (leg row) and `1` (join row).
/// Leg rows with `q = 0` stay zero.
pub fn deradicalize(c: &StructuredC) -> IntMatrix {
    let n = c.dim();
    let mut b = IntMatrix::zeros(n);
    for (i, &d) in c.diag().iter().enumerate() {
        b[(i, i)] = d as i64;
    }
    for &(r, col, w) in c.offdiag() {
        match w {
            Weight::One => {
                b[(r, col)] = 1;
                b[(col, r)] = 1;
            }
            Weight::Sqrt(0) => {}
            Weight::Sqrt(q) => {
                let q = i64::try_from(q).expect("leg count fits in i64");
                let (leg, join) = if matches!(c.labels()[r], CVertex::Leg { .. }) {
                    (r, col)
                } else {
                    (col, r)
                };
                b[(leg, join)] = q;
                b[(join, leg)] = 1;
            }
        }
    }
    b
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn exact_det(m: &IntMatrix) -> BigInt {
    let n = m.order();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(m[(i, j)])).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `det(B - t I)`.
pub fn exact_det_shifted(b: &IntMatrix, t: i64) -> BigInt {
    exact_det(&b.shifted(t))
}

/// Monic `det(x I - M)` of an integer matrix, exactly.
///
/// Computed modulo enough 31-bit primes to cover the coefficient bound
/// `(1 + ||M||_inf)^n` and lifted with the Chinese remainder theorem. Each
/// residue comes from a Hessenberg reduction, so the cost is `O(n^3)` per prime.
pub fn exact_charpoly(m: &IntMatrix) -> IntPolynomial {
    let n = m.order();
    let bound_bits = (n as f64) * ((1 + m.norm_inf()) as f64).log2() + 2.0;
    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    let mut primes = PrimeStream::new();
    while modulus.bits() as f64 <= bound_bits + 1.0 {
        let p = primes.next_prime();
        let residues = charpoly_mod_p(m, p);
        let p_big = BigInt::from(p);
        let inv = mod_inverse((&modulus % &p_big).to_u64().unwrap(), p);
        for (c, &r) in acc.iter_mut().zip(&residues) {
            let cur = (&*c % &p_big + &p_big) % &p_big;
            let cur = cur.to_u64().unwrap();
            let delta = (r + p - cur) % p * inv % p;
            *c += &modulus * BigInt::from(delta);
        }
        modulus *= p_big;
    }
    let half = &modulus >> 1;
    let coeffs = acc
        .into_iter()
        .map(|c| if c > half { c - &modulus } else { c })
        .collect();
    IntPolynomial::new(coeffs)
}

struct PrimeStream {
    next: u64,
}

impl PrimeStream {
    fn new() -> Self {
        Self { next: (1 << 31) - 1 }
    }

    fn next_prime(&mut self) -> u64 {
        loop {
            let c = self.next;
            self.next -= 2;
            if is_prime(c) {
                return c;
            }
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

/// Coefficients (ascending) of `det(x I - M) mod p`.
fn charpoly_mod_p(m: &IntMatrix, p: u64) -> Vec<u64> {
    let n = m.order();
    let red = |x: i64| x.rem_euclid(p as i64) as u64;
    let mut h: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| red(m[(i, j)])).collect())
        .collect();

    // similarity reduction to upper Hessenberg form
    for col in 0..n.saturating_sub(2) {
        let pivot_row = col + 1;
        let Some(piv) = (pivot_row..n).find(|&i| h[i][col] != 0) else {
            continue;
        };
        if piv != pivot_row {
            h.swap(piv, pivot_row);
            for row in h.iter_mut() {
                row.swap(piv, pivot_row);
            }
        }
        let inv = mod_inverse(h[pivot_row][col], p);
        for i in pivot_row + 1..n {
            if h[i][col] == 0 {
                continue;
            }
            let pivot = h[pivot_row].clone();
            let u = h[i][col] * inv % p;
            for (x, &pv) in h[i].iter_mut().zip(&pivot) {
                let sub = u * pv % p;
                *x = (*x + p - sub) % p;
            }
            for row in h.iter_mut() {
                let add = u * row[i] % p;
                row[pivot_row] = (row[pivot_row] + add) % p;
            }
        }
    }

    // polys[r] = charpoly of the leading r x r block
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for r in 1..=n {
        let prev = &polys[r - 1];
        let mut next = vec![0u64; r + 1];
        let diag = h[r - 1][r - 1];
        for (i, &c) in prev.iter().enumerate() {
            next[i + 1] = (next[i + 1] + c) % p;
            next[i] = (next[i] + p - c * diag % p) % p;
        }
        let mut t = 1u64;
        for i in (1..r).rev() {
            t = t * h[i][i - 1] % p;
            let coef = h[i - 1][r - 1] * t % p;
            if coef == 0 {
                continue;
            }
            for (j, &c) in polys[i - 1].iter().enumerate() {
                next[j] = (next[j] + p - coef * c % p) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

/// Monic polynomial with the given roots, in floating point (ascending coefficients).
pub fn charpoly_from_roots(roots: &[f64]) -> Vec<f64> {
    let mut c = vec![1.0];
    for &r in roots {
        let mut next = vec![0.0; c.len() + 1];
        for (i, &x) in c.iter().enumerate() {
            next[i + 1] += x;
            next[i] -= r * x;
        }
        c = next;
    }
    c
}

/// Smallest real root of `p` in `[lo, hi]`.
///
/// Works on the square-free part so roots of even multiplicity still change
/// sign; scans a uniform grid of step at most `1e-3` and bisects the first
/// bracket to `1e-12`.
pub fn min_root(p: &IntPolynomial, lo: f64, hi: f64) -> Result<f64> {
    let not_found = Error::NoRootFound { lo, hi };
    if p.is_zero() || lo.is_nan() || hi.is_nan() || lo > hi {
        return Err(not_found);
    }
    let f = p.square_free();
    let steps = ((hi - lo) / 1e-3).ceil().max(1.0) as usize;
    let h = (hi - lo) / steps as f64;
    let mut x0 = lo;
    let mut f0 = f.eval_f64(x0);
    if f0 == 0.0 {
        return Ok(x0);
    }
    for i in 1..=steps {
        let x1 = if i == steps { hi } else { lo + h * i as f64 };
        let f1 = f.eval_f64(x1);
        if f1 == 0.0 {
            return Ok(x1);
        }
        if f0.signum() != f1.signum() {
            return Ok(bisect(&f, x0, x1, f0));
        }
        x0 = x1;
        f0 = f1;
    }
    Err(not_found)
}

fn bisect(f: &IntPolynomial, mut a: f64, mut b: f64, fa: f64) -> f64 {
    let sa = fa.signum();
    while b - a > 1e-12 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f.eval_f64(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == sa {
            a = mid;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

/// `p(q; lambda) / lambda^b`: the characteristic polynomial of the pruned `C`
/// (up to sign).
pub fn pruned_charpoly(p: &IntPolynomial, b: usize) -> Result<IntPolynomial> {
    p.div_linear_power(&BigInt::zero(), b)
}

/// Rounds floating coefficients to integers; also returns the largest rounding residual.
pub fn round_coefficients(c: &[f64]) -> (Vec<BigInt>, f64) {
    let mut worst: f64 = 0.0;
    let out = c
        .iter()
        .map(|&x| {
            let r = x.round();
            worst = worst.max((x - r).abs());
            BigInt::from(r as i128)
        })
        .collect();
    (out, worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charpoly::build_c;
    use crate::graph::Graph;

    fn spec(q: &[i64]) -> CaterpillarSpec {
        CaterpillarSpec::new(q).unwrap()
    }

    #[test]
    fn eigen_small() {
        let r = sym_eigs(&DenseMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]])).unwrap();
        assert!((r.values[0] + 1.0).abs() < 1e-14 && (r.values[1] - 1.0).abs() < 1e-14);

        let r = sym_eigs(&Graph::path(4).laplacian()).unwrap();
        let pi = std::f64::consts::PI;
        for (j, v) in r.values.iter().enumerate() {
            let expected = 2.0 - 2.0 * (pi * j as f64 / 4.0).cos();
            assert!((v - expected).abs() < 1e-12);
        }

        let r = sym_eigs(&build_c(&spec(&[4, 9])).to_dense()).unwrap();
        let expected = [-1.762, 3.692, 9.071];
        for (v, e) in r.values.iter().zip(expected) {
            assert!((v - e).abs() < 1e-3, "{v} vs {e}");
        }
        // every eigenvalue is a root of -x^3 + 11x^2 - 11x - 59
        for v in &r.values {
            let p = -v * v * v + 11.0 * v * v - 11.0 * v - 59.0;
            assert!(p.abs() < 1e-9);
        }
    }

    #[test]
    fn eigen_diagonal_and_residual() {
        let d = DenseMatrix::from_diag(&[3.0, -1.0, 2.5, 0.0]);
        let r = sym_eigs(&d).unwrap();
        assert_eq!(r.values, vec![-1.0, 0.0, 2.5, 3.0]);
        assert_eq!(r.sweeps, 0);

        let m = build_caterpillar(&spec(&[3, 2, 1, 0, 5, 4])).laplacian();
        let r = sym_eigs(&m).unwrap();
        assert!(r.residual <= 1e-10 * (1.0 + m.norm_inf()));
        let sum: f64 = r.values.iter().sum();
        assert!((sum - m.trace()).abs() < 1e-8 * m.rows() as f64 * m.norm_inf());
    }

    #[test]
    fn eigen_empty() {
        let r = sym_eigs(&DenseMatrix::zeros(0, 0)).unwrap();
        assert!(r.values.is_empty());
    }

    #[test]
    fn mu_examples() {
        assert!((mu_oracle(&spec(&[4, 9, 0, 1])).unwrap() - 0.1862).abs() < 5e-4);
        assert!((mu_oracle(&spec(&[3])).unwrap() - 1.0).abs() < 1e-12);
        assert!((mu_oracle(&spec(&[1, 1])).unwrap() - (2.0 - 2f64.sqrt())).abs() < 1e-12);
        assert_eq!(mu_oracle(&spec(&[0])), Err(Error::GraphTooSmall { needed: 2 }));
    }

    #[test]
    fn deradicalized_matrices() {
        let b = deradicalize(&build_c(&spec(&[4, 9])));
        assert_eq!(b, IntMatrix::from_rows(&[vec![3, 4, 0], vec![1, 0, 1], vec![0, 9, 8]]));
        assert_eq!(exact_det(&b), BigInt::from(-59));

        let b = deradicalize(&build_c(&spec(&[1, 1])));
        assert_eq!(b, IntMatrix::from_rows(&[vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]]));

        let b = deradicalize(&build_c(&spec(&[6])));
        assert_eq!(b, IntMatrix::from_rows(&[vec![5]]));
    }

    #[test]
    fn determinants() {
        let id = IntMatrix::from_rows(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(exact_det(&id), BigInt::one());
        let b = deradicalize(&build_c(&spec(&[9, 0, 1])));
        assert_eq!(exact_det_shifted(&b, -2), BigInt::from(26));
        // needs a pivot swap
        let m = IntMatrix::from_rows(&[vec![0, 2], vec![3, 1]]);
        assert_eq!(exact_det(&m), BigInt::from(-6));
        let singular = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(exact_det(&singular), BigInt::zero());
    }

    #[test]
    fn modular_charpoly_matches_determinants() {
        let l = IntMatrix::from_dense(&build_caterpillar(&spec(&[2, 0, 3])).laplacian()).unwrap();
        let cp = exact_charpoly(&l);
        assert_eq!(cp.degree(), Some(l.order()));
        assert!(cp.is_monic());
        for t in -3..6 {
            // det(tI - L) = (-1)^n det(L - tI)
            let sign = if l.order().is_multiple_of(2) { 1 } else { -1 };
            assert_eq!(cp.eval_i64(t), exact_det_shifted(&l, t) * sign);
        }
        // a non-symmetric matrix with a zero sub-diagonal block
        let m = IntMatrix::from_rows(&[vec![2, 7, 1], vec![0, -3, 4], vec![0, 0, 5]]);
        assert_eq!(
            exact_charpoly(&m),
            IntPolynomial::from_i64(&[30, -11, -4, 1])
        );
    }

    #[test]
    fn roots() {
        let p = IntPolynomial::from_i64(&[0, 2, 0, -1]);
        assert!((min_root(&p, -2.0, 0.0).unwrap() + 2f64.sqrt()).abs() < 1e-11);
        let p = IntPolynomial::from_i64(&[-59, -11, 11, -1]);
        assert!((min_root(&p, -2.0, 0.0).unwrap() + 1.762).abs() < 1e-3);
        // double root
        let p = IntPolynomial::from_i64(&[1, -2, 1]);
        assert!((min_root(&p, 0.0, 3.0).unwrap() - 1.0).abs() < 1e-11);
        assert!(min_root(&IntPolynomial::from_i64(&[1, 0, 1]), -1.0, 1.0).is_err());

        let s = spec(&[4, 9, 0, 1]);
        let pruned = pruned_charpoly(&crate::charpoly::charpoly_p(&s), 1).unwrap();
        let mu = min_root(&pruned.shift(-2), 1e-9, 1.0).unwrap();
        assert!((mu - 0.1862).abs() < 5e-4);
        assert!((mu - mu_oracle(&s).unwrap()).abs() < 1e-8);
    }

    #[test]
    fn float_reconstruction() {
        let c = charpoly_from_roots(&[0.0, 1.0, 1.0, 4.0]);
        let (r, res) = round_coefficients(&c);
        assert!(res < 1e-12);
        assert_eq!(IntPolynomial::new(r), IntPolynomial::from_i64(&[0, -4, 9, -6, 1]));
    }
}
