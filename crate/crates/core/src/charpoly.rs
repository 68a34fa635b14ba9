//! The quotient matrix `C(q_1, ..., q_k)` of the line graph and its
//! characteristic polynomial `p(q; lambda) = det(C - lambda I)`.
//!
//! Everything here is exact: `C` is kept symbolic (square-root weights are
//! tags, not floats) and the recursion runs over big integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::model::{derive_params, CaterpillarSpec};
use crate::oracle::sym_eigs;
use crate::poly::IntPolynomial;
use crate::spectrum::SpectrumMultiset;

/// Row/column label of `C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CVertex {
    /// `v_{q_i}`: the clique formed by the legs of spine vertex `spine` (0-based).
    Leg { spine: usize, q: u64 },
    /// `v_{i(i+1)}`: the spine edge between `spine` and `spine + 1`.
    Join { spine: usize },
}

/// Off-diagonal weight of `C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Weight {
    Sqrt(u64),
    One,
}

impl Weight {
    pub fn value(self) -> f64 {
        match self {
            Weight::Sqrt(q) => (q as f64).sqrt(),
            Weight::One => 1.0,
        }
    }
}

/// Symmetric matrix with integer diagonal and `sqrt(q)`/`1` off-diagonals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuredC {
    labels: Vec<CVertex>,
    diag: Vec<u64>,
    /// Upper-triangle support `(row, col, weight)` with `row < col`.
    offdiag: Vec<(usize, usize, Weight)>,
}

impl StructuredC {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[CVertex] {
        &self.labels
    }

    pub fn diag(&self) -> &[u64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[(usize, usize, Weight)] {
        &self.offdiag
    }

    /// Renders square roots in double precision.
    pub fn to_dense(&self) -> DenseMatrix {
        let mut m = DenseMatrix::from_diag(&self.diag.iter().map(|&d| d as f64).collect::<Vec<_>>());
        for &(r, c, w) in &self.offdiag {
            m[(r, c)] = w.value();
            m[(c, r)] = w.value();
        }
        m
    }

    /// Indices of leg rows whose spine vertex has no legs.
    pub fn zero_rows(&self) -> Vec<usize> {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, l)| matches!(l, CVertex::Leg { q: 0, .. }))
            .map(|(i, _)| i)
            .collect()
    }

    /// Drops the leg rows/columns of leg-free spine vertices.
    pub fn prune_zero(&self) -> StructuredC {
        let dropped = self.zero_rows();
        let mut new_index = vec![None; self.dim()];
        let mut next = 0;
        for (i, slot) in new_index.iter_mut().enumerate() {
            if !dropped.contains(&i) {
                *slot = Some(next);
                next += 1;
            }
        }
        StructuredC {
            labels: self
                .labels
                .iter()
                .enumerate()
                .filter(|(i, _)| new_index[*i].is_some())
                .map(|(_, l)| *l)
                .collect(),
            diag: self
                .diag
                .iter()
                .enumerate()
                .filter(|(i, _)| new_index[*i].is_some())
                .map(|(_, &d)| d)
                .collect(),
            offdiag: self
                .offdiag
                .iter()
                .filter_map(|&(r, c, w)| Some((new_index[r]?, new_index[c]?, w)))
                .collect(),
        }
    }

    /// Block-diagonal direct sum; spine indices of `other` are shifted past `self`.
    pub fn direct_sum(&self, other: &StructuredC) -> StructuredC {
        let base = self.dim();
        let spine_offset = self
            .labels
            .iter()
            .map(|l| match *l {
                CVertex::Leg { spine, .. } | CVertex::Join { spine } => spine + 1,
            })
            .max()
            .unwrap_or(0);
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().map(|l| match *l {
            CVertex::Leg { spine, q } => CVertex::Leg {
                spine: spine + spine_offset,
                q,
            },
            CVertex::Join { spine } => CVertex::Join {
                spine: spine + spine_offset,
            },
        }));
        let mut diag = self.diag.clone();
        diag.extend_from_slice(&other.diag);
        let mut offdiag = self.offdiag.clone();
        offdiag.extend(
            other
                .offdiag
                .iter()
                .map(|&(r, c, w)| (r + base, c + base, w)),
        );
        StructuredC {
            labels,
            diag,
            offdiag,
        }
    }
}

/// `C(q_1, ..., q_k)` of order `2k - 1`, rows ordered `v_q1, v_12, v_q2, ..., v_qk`.
pub fn build_c(spec: &CaterpillarSpec) -> StructuredC {
    let k = spec.k();
    let mut labels = Vec::with_capacity(2 * k - 1);
    let mut diag = Vec::with_capacity(2 * k - 1);
    let mut offdiag = Vec::new();
    for (i, &q) in spec.legs().iter().enumerate() {
        let leg = 2 * i;
        labels.push(CVertex::Leg { spine: i, q });
        diag.push(q.saturating_sub(1));
        if i > 0 {
            offdiag.push((leg - 1, leg, Weight::Sqrt(q)));
        }
        if i + 1 < k {
            labels.push(CVertex::Join { spine: i });
            diag.push(0);
            offdiag.push((leg, leg + 1, Weight::Sqrt(q)));
            if i > 0 {
                offdiag.push((leg - 1, leg + 1, Weight::One));
            }
        }
    }
    offdiag.sort_unstable_by_key(|&(r, c, _)| (r, c));
    StructuredC {
        labels,
        diag,
        offdiag,
    }
}

/// `C` with the row and column of the `i`-th spine edge removed (`1 <= i < k`),
/// i.e. `C(q_1..q_i) (+) C(q_{i+1}..q_k)`.
pub fn deleted_c(spec: &CaterpillarSpec, i: usize) -> Result<StructuredC> {
    let k = spec.k();
    if i == 0 || i >= k {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: k.saturating_sub(1),
        });
    }
    let left = build_c(&spec.slice(0..i)?);
    let right = build_c(&spec.slice(i..k)?);
    Ok(left.direct_sum(&right))
}

// Building blocks of the recursion, all in the variable lambda.

fn qplus_minus_one(q: u64) -> BigInt {
    BigInt::from(q.saturating_sub(1))
}

/// `q+ - 1 - lambda`.
fn diag_term(q: u64) -> IntPolynomial {
    IntPolynomial::c_minus_x(qplus_minus_one(q))
}

/// `lambda^2 - (q+ - 1) lambda - q`.
fn head_term(q: u64) -> IntPolynomial {
    IntPolynomial::new(vec![-BigInt::from(q), -qplus_minus_one(q), BigInt::one()])
}

/// `q (2 + lambda) - (q+ - 1 - lambda)`.
fn link_term(q: u64) -> IntPolynomial {
    let q_big = BigInt::from(q);
    IntPolynomial::new(vec![
        BigInt::from(2) * &q_big - qplus_minus_one(q),
        q_big + 1,
    ])
}

/// `p(q_1, ..., q_k; lambda)` by the closed forms for `k <= 3` and the
/// first-two-rows Laplace recursion for longer suffixes. Each suffix
/// polynomial is computed once.
pub fn charpoly_p(spec: &CaterpillarSpec) -> IntPolynomial {
    suffix_polys(spec.legs()).swap_remove(0)
}

/// `out[s] = p(q_s, ..., q_{k-1})` for every suffix start `s`.
fn suffix_polys(q: &[u64]) -> Vec<IntPolynomial> {
    let k = q.len();
    let mut out = vec![IntPolynomial::zero(); k];
    for s in (0..k).rev() {
        let m = k - s;
        out[s] = match m {
            1 => diag_term(q[s]),
            2 => {
                &(&head_term(q[s]) * &diag_term(q[s + 1]))
                    - &diag_term(q[s]).scale(&BigInt::from(q[s + 1]))
            }
            3 => {
                let b = diag_term(q[s]);
                &(&(&head_term(q[s]) * &out[s + 1])
                    + &(&(&b * &link_term(q[s + 1])) * &diag_term(q[s + 2])))
                    + &b.scale(&(BigInt::from(q[s + 1]) * q[s + 2]))
            }
            _ => lemma_step(q, s, &out),
        };
    }
    out
}

fn lemma_step(q: &[u64], s: usize, suffix: &[IntPolynomial]) -> IntPolynomial {
    let k = q.len();
    let m = k - s;
    let b = diag_term(q[s]);
    let mut acc = &head_term(q[s]) * &suffix[s + 1];
    // running product q_{s+1} * ... * q_{s+j-2} (empty product = 1)
    let mut prod = BigInt::one();
    let mut sum = IntPolynomial::zero();
    for j in 2..m {
        let idx = s + j - 1;
        let term = (&link_term(q[idx]) * &suffix[idx + 1]).scale(&prod);
        sum = if j % 2 == 0 { &sum + &term } else { &sum - &term };
        prod *= q[idx];
    }
    acc = &acc + &(&b * &sum);
    let tail = prod * q[k - 1];
    let tail = b.scale(&tail);
    if (m + 1).is_multiple_of(2) {
        &acc + &tail
    } else {
        &acc - &tail
    }
}

/// `p(q; -2)` and `p'(q; -2)` for every suffix, by the scalar recursions
/// obtained from evaluating the general recursion and its derivative at `-2`.
fn suffix_values_at_minus2(q: &[u64]) -> Vec<(BigInt, BigInt)> {
    let k = q.len();
    let qp = |i: usize| BigInt::from(q[i].max(1));
    let qb = |i: usize| BigInt::from(q[i]);
    let mut out: Vec<(BigInt, BigInt)> = vec![(BigInt::zero(), BigInt::zero()); k];
    for s in (0..k).rev() {
        let m = k - s;
        if m == 1 {
            out[s] = (qp(s) + 1, BigInt::from(-1));
            continue;
        }
        // head(-2) = 2 + 2 q1+ - q1, head'(-2) = -3 - q1+, diag(-2) = q1+ + 1
        let head = BigInt::from(2) + BigInt::from(2) * qp(s) - qb(s);
        let head_d = -BigInt::from(3) - qp(s);
        let diag = qp(s) + 1;
        let (p_next, dp_next) = &out[s + 1];
        let mut p = &head * p_next;
        let mut dp = &head_d * p_next + &head * dp_next;
        let mut prod = BigInt::one();
        for j in 2..m {
            let idx = s + j - 1;
            let (pj, dpj) = &out[idx + 1];
            let sign = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            // link(-2) = -(q_j+ + 1), link'(-2) = q_j + 1
            p -= &sign * &prod * &diag * (qp(idx) + 1) * pj;
            dp += &sign * &prod * ((qp(idx) + 1) + (qb(idx) + 1) * &diag) * pj;
            dp -= &sign * &prod * &diag * (qp(idx) + 1) * dpj;
            prod *= qb(idx);
        }
        let tail = prod * qb(k - 1);
        // (-1)^(m+1) * diag * tail, and its derivative (-1)^m * tail
        if m % 2 == 1 {
            p += &diag * &tail;
            dp -= &tail;
        } else {
            p -= &diag * &tail;
            dp += &tail;
        }
        out[s] = (p, dp);
    }
    out
}

/// `p(q; -2) = det(2I + C)`; always positive.
pub fn p_minus2(spec: &CaterpillarSpec) -> BigInt {
    suffix_values_at_minus2(spec.legs()).swap_remove(0).0
}

/// `p'(q; -2)`; always negative.
pub fn pprime_minus2(spec: &CaterpillarSpec) -> BigInt {
    suffix_values_at_minus2(spec.legs()).swap_remove(0).1
}

/// Monic `det(mu I - L(T))`, assembled as
/// `-mu (mu - 1)^a p(q; mu - 2) / (mu - 2)^b` with exact division.
pub fn laplacian_charpoly(spec: &CaterpillarSpec) -> Result<IntPolynomial> {
    let d = derive_params(spec);
    let shifted = charpoly_p(spec).shift(-2);
    let reduced = shifted.div_linear_power(&BigInt::from(2), d.b)?;
    let mu = IntPolynomial::linear_root(0);
    let ones = IntPolynomial::linear_root(1).pow(d.a);
    Ok(-&(&(&mu * &ones) * &reduced))
}

/// Adjacency spectrum of the line graph: `-1` with multiplicity `a` plus the
/// eigenvalues of the pruned `C`.
pub fn linegraph_spectrum(spec: &CaterpillarSpec) -> Result<SpectrumMultiset> {
    let d = derive_params(spec);
    let pruned = build_c(spec).prune_zero();
    let mut values = if pruned.dim() == 0 {
        Vec::new()
    } else {
        sym_eigs(&pruned.to_dense())?.values
    };
    values.extend(std::iter::repeat_n(-1.0, d.a));
    Ok(SpectrumMultiset::from_values(values))
}

/// Laplacian spectrum `{0} + {1^a} + (sigma(pruned C) + 2)`.
pub fn laplacian_spectrum(spec: &CaterpillarSpec) -> Result<SpectrumMultiset> {
    let d = derive_params(spec);
    let pruned = build_c(spec).prune_zero();
    let mut values = vec![0.0];
    values.extend(std::iter::repeat_n(1.0, d.a));
    if pruned.dim() > 0 {
        values.extend(sym_eigs(&pruned.to_dense())?.values.iter().map(|v| v + 2.0));
    }
    Ok(SpectrumMultiset::from_values(values))
}
