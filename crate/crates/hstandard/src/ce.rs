//! Chevalley-Eilenberg cohomology oracle.
//!
//! Computes the cohomology of alternating cochains on a Lie algebra (or a
//! free Lie-Rinehart algebra over a commutative scalar algebra) directly
//! from the classical formula, with its own dense matrices. This module is
//! deliberately independent of the cochain/straightening machinery so it
//! can serve as an oracle for the isomorphism theorems.

use crate::leibniz::LieAlgebra;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// A Lie algebra that is a free module of finite rank over a commutative
/// algebra `R`, with an anchor-compatible representation. `dim_r = 1` with
/// identity `act_v` recovers the plain Lie-algebra case.
#[derive(Clone, Debug)]
pub struct RinehartLie {
    /// Rank of the free module (number of module basis elements `x_a`).
    pub rank: usize,
    /// Dimension of `R` over the base field.
    pub dim_r: usize,
    /// `[x_a, x_b] = Σ_{c,r} bracket[((a·rank + b)·rank + c)·dim_r + r] f_r · x_c`.
    pub bracket: Vec<Scalar>,
    pub dim_v: usize,
    /// `∇_{x_a}` on `V` (base-field matrices).
    pub nabla: Vec<Matrix>,
    /// Action of the `R`-basis on `V`.
    pub act_v: Vec<Matrix>,
}

impl RinehartLie {
    pub fn from_lie(g: &LieAlgebra) -> Self {
        let rank = g.dim;
        let mut bracket = vec![Scalar::zero(); rank * rank * rank];
        bracket.clone_from(&g.bracket);
        RinehartLie {
            rank,
            dim_r: 1,
            bracket,
            dim_v: g.rep.dim_v,
            nabla: g.rep.action.clone(),
            act_v: vec![Matrix::identity(g.rep.dim_v)],
        }
    }

    fn bracket_coeff(&self, a: usize, b: usize, c: usize, r: usize) -> &Scalar {
        &self.bracket[((a * self.rank + b) * self.rank + c) * self.dim_r + r]
    }
}

/// Cohomology of one degree: dimension plus representative cocycles in the
/// alternating-cochain coordinates (one flat vector per class).
#[derive(Clone, Debug)]
pub struct CeDegree {
    pub dim: usize,
    pub representatives: Vec<Vec<Scalar>>,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn tuple_index(tuples: &[Vec<usize>], t: &[usize]) -> usize {
    tuples
        .binary_search_by(|probe| probe.as_slice().cmp(t))
        .expect("tuple must be in the enumeration")
}

/// Sort a tuple of distinct indices, returning (sorted, sign); `None` on a
/// repeated index (the alternating value is zero).
fn sort_signed(t: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v = t.to_vec();
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((v, sign))
    }
}

/// The CE differential `C^n → C^{n+1}` as a dense matrix over the
/// alternating-cochain coordinates (row-index = output coordinate).
fn ce_differential(g: &RinehartLie, n: usize) -> Matrix {
    let dv = g.dim_v;
    let src = combinations(g.rank, n);
    let dst = combinations(g.rank, n + 1);
    let mut d = Matrix::zeros(dst.len() * dv, src.len() * dv);
    let mut add = |row: usize, col: usize, v: &Scalar| {
        if !v.is_zero() {
            let t = d.get(row, col) + v;
            d.set(row, col, t);
        }
    };
    for (ti, t) in dst.iter().enumerate() {
        // ∇ terms: Σ_a (-1)^{a+1} ∇_{x_a} ζ(... x̂_a ...), positions 1-based.
        for a in 0..t.len() {
            let sign = if a % 2 == 0 { 1 } else { -1 };
            let rest: Vec<usize> = t
                .iter()
                .enumerate()
                .filter(|(p, _)| *p != a)
                .map(|(_, &x)| x)
                .collect();
            let si = tuple_index(&src, &rest);
            let m = &g.nabla[t[a]];
            for v in 0..dv {
                for u in 0..dv {
                    let c = m.get(v, u).scale_sign(sign);
                    add(ti * dv + v, si * dv + u, &c);
                }
            }
        }
        // bracket terms: Σ_{a<b} (-1)^{a+b} ζ([x_a, x_b], ... x̂_a ... x̂_b ...).
        for a in 0..t.len() {
            for b in a + 1..t.len() {
                // 1-based sign (-1)^{(a+1)+(b+1)} = (-1)^{a+b}.
                let base_sign = if (a + b) % 2 == 0 { 1 } else { -1 };
                let rest: Vec<usize> = t
                    .iter()
                    .enumerate()
                    .filter(|(p, _)| *p != a && *p != b)
                    .map(|(_, &x)| x)
                    .collect();
                for c in 0..g.rank {
                    let mut args = Vec::with_capacity(n);
                    args.push(c);
                    args.extend_from_slice(&rest);
                    let Some((sorted, perm_sign)) = sort_signed(&args) else {
                        continue;
                    };
                    let si = tuple_index(&src, &sorted);
                    for r in 0..g.dim_r {
                        let coef = g.bracket_coeff(t[a], t[b], c, r);
                        if coef.is_zero() {
                            continue;
                        }
                        let act = &g.act_v[r];
                        let total = coef.scale_sign(base_sign * perm_sign);
                        for v in 0..dv {
                            for u in 0..dv {
                                let term = &total * act.get(v, u);
                                add(ti * dv + v, si * dv + u, &term);
                            }
                        }
                    }
                }
            }
        }
    }
    d
}

trait ScaleSign {
    fn scale_sign(&self, sign: i32) -> Scalar;
}

impl ScaleSign for Scalar {
    fn scale_sign(&self, sign: i32) -> Scalar {
        if sign >= 0 {
            self.clone()
        } else {
            -self
        }
    }
}

/// Exact CE cohomology in degrees `0..=n_max`, with deterministic
/// representative cocycles (echelon basis of the kernel reduced modulo the
/// image).
pub fn rinehart_cohomology(g: &RinehartLie, n_max: usize) -> Vec<CeDegree> {
    let dv = g.dim_v;
    let mut diffs: Vec<Matrix> = (0..=n_max).map(|n| ce_differential(g, n)).collect();
    // d² = 0 sanity: the oracle input must be an honest Lie(-Rinehart) algebra.
    for n in 0..n_max {
        let comp = diffs[n + 1].matmul(&diffs[n]);
        assert!(comp.is_zero(), "CE oracle: d² ≠ 0 at degree {n}");
    }
    let mut out = Vec::new();
    for n in 0..=n_max {
        let cn = combinations(g.rank, n).len() * dv;
        let d_n = std::mem::replace(&mut diffs[n], Matrix::zeros(0, 0));
        let kernel = d_n.nullspace();
        let rank_prev = if n == 0 {
            0
        } else {
            ce_differential(g, n - 1).rank()
        };
        let dim = kernel.dim() - rank_prev;
        // Representatives: kernel basis vectors independent modulo the image.
        let mut reps = Vec::new();
        if dim > 0 {
            let image_vecs: Vec<Vec<Scalar>> = if n == 0 {
                Vec::new()
            } else {
                let d_prev = ce_differential(g, n - 1);
                (0..d_prev.cols())
                    .map(|j| {
                        let mut e = vec![Scalar::zero(); d_prev.cols()];
                        e[j] = Scalar::one();
                        d_prev.mul_vec(&e)
                    })
                    .collect()
            };
            let mut span = crate::matrix::Subspace::from_vectors(cn, image_vecs);
            for v in kernel.basis_vectors() {
                if !span.contains_vec(&v) {
                    span = span.sum(&crate::matrix::Subspace::from_vectors(cn, vec![v.clone()]));
                    reps.push(v);
                }
                if reps.len() == dim {
                    break;
                }
            }
        }
        out.push(CeDegree {
            dim,
            representatives: reps,
        });
    }
    out
}

/// CE cohomology of a plain Lie algebra with its representation.
pub fn ce_cohomology(g: &LieAlgebra, n_max: usize) -> Vec<CeDegree> {
    rinehart_cohomology(&RinehartLie::from_lie(g), n_max)
}

pub fn ce_dims(g: &LieAlgebra, n_max: usize) -> Vec<usize> {
    ce_cohomology(g, n_max).iter().map(|d| d.dim).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::leibniz::{quotient_lie, LeftRepresentation, LieAlgebra};
    use crate::matrix::Subspace;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn abelian_trivial_coefficients_binomials() {
        let g = LieAlgebra {
            dim: 2,
            bracket: vec![Scalar::zero(); 8],
            rep: LeftRepresentation::trivial(2, 1),
        };
        assert_eq!(ce_dims(&g, 3), vec![1, 2, 1, 0]);
    }

    #[test]
    fn one_dim_identity_action_is_acyclic() {
        let g = LieAlgebra {
            dim: 1,
            bracket: vec![Scalar::zero()],
            rep: LeftRepresentation {
                dim_v: 1,
                action: vec![Matrix::identity(1)],
            },
        };
        assert_eq!(ce_dims(&g, 1), vec![0, 0]);
    }

    #[test]
    fn sl2_trivial_coefficients() {
        let alg = fixtures::sl2();
        let q = quotient_lie(&alg, &Subspace::zero(3), &LeftRepresentation::trivial(3, 1)).unwrap();
        assert_eq!(ce_dims(&q.lie, 3), vec![1, 0, 0, 1]);
    }

    #[test]
    fn heisenberg_mod_center() {
        let q = quotient_lie(
            &fixtures::heisenberg(),
            &fixtures::heisenberg_h(),
            &fixtures::heisenberg_rep(),
        )
        .unwrap();
        assert_eq!(ce_dims(&q.lie, 3), vec![1, 2, 1, 0]);
    }

    #[test]
    fn omni_quotients_are_acyclic() {
        for n in 1..=2 {
            let q = quotient_lie(
                &fixtures::omni_lie(n),
                &fixtures::omni_lie_h(n),
                &fixtures::omni_lie_rep(n),
            )
            .unwrap();
            assert_eq!(ce_dims(&q.lie, 3), vec![0, 0, 0, 0], "omni-lie gl({n})");
        }
    }

    #[test]
    fn rinehart_reduces_to_lie_for_trivial_r() {
        let q = quotient_lie(
            &fixtures::dim2_leibniz(),
            &fixtures::dim2_h(),
            &fixtures::dim2_rep(),
        )
        .unwrap();
        assert_eq!(ce_dims(&q.lie, 3), vec![1, 1, 0, 0]);
        let rl = RinehartLie::from_lie(&q.lie);
        let dims: Vec<usize> = rinehart_cohomology(&rl, 3).iter().map(|d| d.dim).collect();
        assert_eq!(dims, vec![1, 1, 0, 0]);
    }

    #[test]
    fn representatives_are_cocycles() {
        let q = quotient_lie(
            &fixtures::heisenberg(),
            &fixtures::heisenberg_h(),
            &fixtures::heisenberg_rep(),
        )
        .unwrap();
        let g = RinehartLie::from_lie(&q.lie);
        let coh = rinehart_cohomology(&g, 2);
        for (n, deg) in coh.iter().enumerate() {
            assert_eq!(deg.representatives.len(), deg.dim);
            let d = ce_differential(&g, n);
            for r in &deg.representatives {
                assert!(d.mul_vec(r).iter().all(Scalar::is_zero));
            }
        }
        let _ = s(0);
    }
}
