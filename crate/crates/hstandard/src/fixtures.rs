//! Small named algebras used throughout the tests and shipped as example
//! input files by the CLI.

use crate::leibniz::{LeftRepresentation, LeibnizAlgebra};
use crate::matrix::{Matrix, Subspace};
use crate::scalar::Scalar;

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

/// The 2-dimensional nilpotent Leibniz algebra with `e1∘e1 = e2`.
pub fn dim2_leibniz() -> LeibnizAlgebra {
    LeibnizAlgebra::from_sparse(2, &[(0, 0, 1, s(1))])
}

/// Its canonical isotropic ideal `H = Z = span{e2}`.
pub fn dim2_h() -> Subspace {
    Subspace::from_vectors(2, vec![vec![s(0), s(1)]])
}

/// Trivial 1-dimensional representation of the dim-2 fixture.
pub fn dim2_rep() -> LeftRepresentation {
    LeftRepresentation::trivial(2, 1)
}

/// The omni-Lie algebra `gl(V) ⊕ V` with `(A+v)∘(B+w) = [A,B] + Aw`.
///
/// Basis order: the `n²` matrix units `E_{ab}` (row-major), then the `n`
/// vectors of `V`.
pub fn omni_lie(n: usize) -> LeibnizAlgebra {
    let g = n * n;
    let dim = g + n;
    let mut entries = Vec::new();
    let eidx = |a: usize, b: usize| a * n + b;
    // [E_ab, E_cd] = δ_bc E_ad - δ_da E_cb
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let (i, j) = (eidx(a, b), eidx(c, d));
                    if b == c {
                        entries.push((i, j, eidx(a, d), s(1)));
                    }
                    if d == a {
                        entries.push((i, j, eidx(c, b), s(-1)));
                    }
                }
            }
        }
    }
    // E_ab ∘ w_c = δ_bc w_a
    for a in 0..n {
        for b in 0..n {
            entries.push((eidx(a, b), g + b, g + a, s(1)));
        }
    }
    // merge duplicate (i,j,k) entries (diagonal matrix units overlap)
    let mut bracket = vec![Scalar::zero(); dim * dim * dim];
    for (i, j, k, c) in entries {
        let idx = (i * dim + j) * dim + k;
        bracket[idx] = &bracket[idx] + &c;
    }
    LeibnizAlgebra::new(dim, bracket)
}

/// `H = V`, the left center of the omni-Lie algebra.
pub fn omni_lie_h(n: usize) -> Subspace {
    let dim = n * n + n;
    let g = n * n;
    let vecs = (0..n)
        .map(|i| {
            let mut v = vec![s(0); dim];
            v[g + i] = s(1);
            v
        })
        .collect();
    Subspace::from_vectors(dim, vecs)
}

/// Standard action of `gl(V)` on `V`, extended by zero on the `V` summand.
pub fn omni_lie_rep(n: usize) -> LeftRepresentation {
    let mut action = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let mut m = Matrix::zeros(n, n);
            m.set(a, b, s(1));
            action.push(m);
        }
    }
    action.extend(vec![Matrix::zeros(n, n); n]);
    LeftRepresentation { dim_v: n, action }
}

/// The Heisenberg Lie algebra `[x, y] = z` as a Leibniz algebra.
pub fn heisenberg() -> LeibnizAlgebra {
    LeibnizAlgebra::from_sparse(3, &[(0, 1, 2, s(1)), (1, 0, 2, s(-1))])
}

pub fn heisenberg_h() -> Subspace {
    Subspace::from_vectors(3, vec![vec![s(0), s(0), s(1)]])
}

pub fn heisenberg_rep() -> LeftRepresentation {
    LeftRepresentation::trivial(3, 1)
}

/// `sl2` over ℚ with basis `(e, f, h)`; trivial center, used with `H = 0`.
pub fn sl2() -> LeibnizAlgebra {
    LeibnizAlgebra::from_sparse(
        3,
        &[
            // [e, f] = h
            (0, 1, 2, s(1)),
            (1, 0, 2, s(-1)),
            // [h, e] = 2e
            (2, 0, 0, s(2)),
            (0, 2, 0, s(-2)),
            // [h, f] = -2f
            (2, 1, 1, s(-2)),
            (1, 2, 1, s(2)),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_valid() {
        assert!(dim2_leibniz().validate().is_valid());
        assert!(heisenberg().validate().is_valid());
        assert!(sl2().validate().is_valid());
        for n in 1..=2 {
            let alg = omni_lie(n);
            assert!(alg.validate().is_valid());
            assert_eq!(alg.left_center(), omni_lie_h(n));
            let rep = omni_lie_rep(n);
            assert!(rep.validate(&alg, &omni_lie_h(n)).is_valid());
        }
    }
}
