//! The unified complex context.
//!
//! `HContext` is the "ambient space + isotropic ideal H + coefficient
//! representation" package that drives the H-standard complex for both the
//! Leibniz case and the Courant-Dorfman case. It stores the structure as
//! basis tensors:
//!
//! * the bracket and the connection `∇` on the coefficients,
//! * the pairing-into-`H` map `P(x, y) = x∘y + y∘x` in `H`-coordinates
//!   (for a Courant-Dorfman algebra this equals `∂⟨x, y⟩` by axiom (3);
//!   the symmetrized form is also the correct map on degree-truncated
//!   structures, where `∂` applied to a truncated pairing would lose
//!   low-degree content),
//! * `h ∘ e` in `H`-coordinates (the ideal property makes this well
//!   defined),
//! * an optional scalar layer (`R`, module actions, `R`-valued pairing,
//!   `∂` in `H`-coordinates) that switches on the weak-`R`-linearity and
//!   `H`-slot-`R`-linearity cochain conditions.

use crate::cdalgebra::{CdHData, CommutativeAlgebra, CourantDorfmanAlgebra, DegreeGuard};
use crate::leibniz::{greedy_complement, unit, LeftRepresentation, LeibnizAlgebra};
use crate::matrix::{Matrix, Subspace};
use crate::report::{InvalidStructure, ValidationReport};
use crate::scalar::Scalar;

/// Scalar layer of a Courant-Dorfman context.
#[derive(Clone, Debug)]
pub struct ScalarLayer {
    pub r: CommutativeAlgebra,
    /// `f_a` acting on the ambient space.
    pub act_e: Vec<Matrix>,
    /// `f_a` acting on the coefficients.
    pub act_v: Vec<Matrix>,
    /// `f_a` acting on `H`, in `H`-basis coordinates.
    pub act_h: Vec<Matrix>,
    /// `⟨e_i, e_j⟩` in `R`-coordinates, flat `[i][j][a]`.
    pub pairing: Vec<Scalar>,
    /// `∂ f_a` in `H`-basis coordinates (column `a`).
    pub partial_h: Matrix,
}

impl ScalarLayer {
    pub fn dim_r(&self) -> usize {
        self.r.dim_r
    }

    pub fn pairing_r(&self, i: usize, j: usize, dim_e: usize) -> &[Scalar] {
        let d = self.r.dim_r;
        &self.pairing[(i * dim_e + j) * d..(i * dim_e + j + 1) * d]
    }
}

/// Ambient space with isotropic ideal and coefficient representation.
#[derive(Clone, Debug)]
pub struct HContext {
    pub dim_e: usize,
    pub dim_v: usize,
    /// The ideal, canonical echelon basis.
    pub h: Subspace,
    /// Bracket tensor over the ambient basis, flat `[i][j][k]`.
    pub bracket: Vec<Scalar>,
    /// `∇_{e_i}` on the coefficients.
    pub nabla: Vec<Matrix>,
    /// `P(e_i, e_j)` in `H`-coordinates, flat `[i][j][m]`.
    pub pair_h: Vec<Scalar>,
    /// `h_m ∘ e_i` in `H`-coordinates, flat `[m][i][m']`.
    pub h_bracket_e: Vec<Scalar>,
    pub scalars: Option<ScalarLayer>,
    /// Degree data for truncated structures (guarded theorem checks).
    pub guard: Option<DegreeGuard>,
    /// Chosen complement of `H` (rows in ambient coordinates).
    pub complement: Vec<Vec<Scalar>>,
}

impl HContext {
    pub fn dim_h(&self) -> usize {
        self.h.dim()
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Scalar] {
        let d = self.dim_e;
        &self.bracket[(i * d + j) * d..(i * d + j + 1) * d]
    }

    pub fn bracket_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim_e];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, b) in self.bracket_basis(i, j).iter().enumerate() {
                    out[k].add_mul_assign(&c, b);
                }
            }
        }
        out
    }

    pub fn pair_h_basis(&self, i: usize, j: usize) -> &[Scalar] {
        let dh = self.dim_h();
        &self.pair_h[(i * self.dim_e + j) * dh..(i * self.dim_e + j + 1) * dh]
    }

    pub fn h_bracket_e_basis(&self, m: usize, i: usize) -> &[Scalar] {
        let dh = self.dim_h();
        &self.h_bracket_e[(m * self.dim_e + i) * dh..(m * self.dim_e + i + 1) * dh]
    }

    /// Row `m` of the `H` basis, in ambient coordinates.
    pub fn h_basis_vec(&self, m: usize) -> &[Scalar] {
        self.h.basis().row(m)
    }

    /// Express a vector known to lie in `H` in `H`-basis coordinates.
    /// Returns `None` when the vector is not in `H`.
    pub fn h_coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let basis = self.h.basis();
        let mut coords = Vec::with_capacity(basis.rows());
        // The basis is in reduced echelon form: coordinates read off pivots.
        let mut residual = v.to_vec();
        for m in 0..basis.rows() {
            let pivot = (0..self.dim_e)
                .find(|&j| !basis.get(m, j).is_zero())
                .expect("echelon basis rows are nonzero");
            let c = residual[pivot].clone();
            if !c.is_zero() {
                for j in 0..self.dim_e {
                    let t = &residual[j] - &(&c * basis.get(m, j));
                    residual[j] = t;
                }
            }
            coords.push(c);
        }
        if residual.iter().all(Scalar::is_zero) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn e_degree(&self, i: usize) -> usize {
        self.guard.as_ref().map_or(0, |g| g.e_degrees[i])
    }

    /// Build a Leibniz context from a validated `(L, H, V)` triple.
    pub fn leibniz(
        alg: &LeibnizAlgebra,
        h: &Subspace,
        rep: &LeftRepresentation,
    ) -> Result<HContext, InvalidStructure> {
        let v = alg.validate();
        if !v.is_valid() {
            return Err(InvalidStructure::new("not a Leibniz algebra", v));
        }
        let v = alg.validate_h_ideal(h);
        if !v.is_valid() {
            return Err(InvalidStructure::new("invalid isotropic ideal", v));
        }
        let v = rep.validate(alg, h);
        if !v.is_valid() {
            return Err(InvalidStructure::new("invalid H-representation", v));
        }
        Self::from_tensors(
            alg.dim,
            rep.dim_v,
            h.clone(),
            (0..alg.dim * alg.dim)
                .flat_map(|ij| alg.bracket_basis(ij / alg.dim, ij % alg.dim).to_vec())
                .collect(),
            rep.action.clone(),
            None,
            None,
        )
    }

    /// Build a Courant-Dorfman context from validated `(cd, hdata)`.
    pub fn courant_dorfman(
        cd: &CourantDorfmanAlgebra,
        hdata: &CdHData,
    ) -> Result<HContext, InvalidStructure> {
        let v = cd.validate();
        if !v.is_valid() {
            return Err(InvalidStructure::new("not a Courant-Dorfman algebra", v));
        }
        let v = cd.validate_h_ideal(&hdata.h);
        if !v.is_valid() {
            return Err(InvalidStructure::new("invalid isotropic ideal", v));
        }
        let v = hdata.validate(cd);
        if !v.is_valid() {
            return Err(InvalidStructure::new("invalid H-representation", v));
        }

        let h = hdata.h.clone();
        let dim_e = cd.dim_e;
        let dim_r = cd.r.dim_r;
        let mut ctx = Self::from_tensors(
            dim_e,
            hdata.dim_v,
            h.clone(),
            cd.bracket.clone(),
            hdata.nabla.clone(),
            None,
            cd.guard.clone(),
        )?;

        // H-coordinate forms of the scalar structure.
        let dh = h.dim();
        let mut act_h = Vec::with_capacity(dim_r);
        let mut partial_h = Matrix::zeros(dh, dim_r);
        for a in 0..dim_r {
            let fa = unit(dim_r, a);
            let mut m = Matrix::zeros(dh, dh);
            for x in 0..dh {
                let img = cd.act_vec(&fa, ctx.h.basis().row(x));
                let coords = ctx.h_coords(&img).ok_or_else(|| {
                    let mut r = ValidationReport::new();
                    r.record(false, "H is an R-submodule", || format!("f{a} · h{x}"));
                    InvalidStructure::new("H not R-stable", r)
                })?;
                for (y, c) in coords.into_iter().enumerate() {
                    m.set(y, x, c);
                }
            }
            act_h.push(m);
            let pf = cd.partial_vec(&fa);
            let coords = ctx.h_coords(&pf).ok_or_else(|| {
                let mut r = ValidationReport::new();
                r.record(false, "∂R ⊆ H", || format!("∂f{a}"));
                InvalidStructure::new("∂R not contained in H", r)
            })?;
            for (y, c) in coords.into_iter().enumerate() {
                partial_h.set(y, a, c);
            }
        }

        let layer = ScalarLayer {
            r: cd.r.clone(),
            act_e: cd.module_action.clone(),
            act_v: hdata.act_v.clone(),
            act_h,
            pairing: cd.pairing.clone(),
            partial_h,
        };
        // The complement must be R-stable when the scalar layer is active
        // (the decomposition distinguishes H-slots and X-slots under
        // R-multiplication).
        let x_span = Subspace::from_vectors(dim_e, ctx.complement.clone());
        let mut stab = ValidationReport::new();
        for a in 0..dim_r {
            let fa = unit(dim_r, a);
            for (q, x) in ctx.complement.iter().enumerate() {
                stab.record(
                    x_span.contains_vec(&cd.act_vec(&fa, x)),
                    "complement X is R-stable",
                    || format!("f{a} · x{q}"),
                );
            }
        }
        if !stab.is_valid() {
            return Err(InvalidStructure::new(
                "greedy complement is not R-stable; supply an explicit one",
                stab,
            ));
        }
        ctx.scalars = Some(layer);
        Ok(ctx)
    }

    /// Assemble a context from raw tensors, deriving `P` and `h ∘ e`.
    pub fn from_tensors(
        dim_e: usize,
        dim_v: usize,
        h: Subspace,
        bracket: Vec<Scalar>,
        nabla: Vec<Matrix>,
        scalars: Option<ScalarLayer>,
        guard: Option<DegreeGuard>,
    ) -> Result<HContext, InvalidStructure> {
        let complement = greedy_complement(dim_e, &h);
        let mut ctx = HContext {
            dim_e,
            dim_v,
            h,
            bracket,
            nabla,
            pair_h: Vec::new(),
            h_bracket_e: Vec::new(),
            scalars,
            guard,
            complement,
        };
        let dh = ctx.dim_h();
        let mut pair_h = vec![Scalar::zero(); dim_e * dim_e * dh];
        for i in 0..dim_e {
            for j in 0..dim_e {
                let mut p = ctx.bracket_basis(i, j).to_vec();
                let q = ctx.bracket_basis(j, i);
                for (u, v) in p.iter_mut().zip(q) {
                    *u += v;
                }
                let coords = ctx.h_coords(&p).ok_or_else(|| {
                    let mut r = ValidationReport::new();
                    r.record(false, "symmetrized bracket lands in H", || {
                        format!("(e{i}, e{j})")
                    });
                    InvalidStructure::new("pairing escapes H", r)
                })?;
                for (m, c) in coords.into_iter().enumerate() {
                    pair_h[(i * dim_e + j) * dh + m] = c;
                }
            }
        }
        let mut h_bracket_e = vec![Scalar::zero(); dh * dim_e * dh];
        for m in 0..dh {
            let hv = ctx.h.basis().row(m).to_vec();
            for i in 0..dim_e {
                let b = ctx.bracket_vec(&hv, &unit(dim_e, i));
                let coords = ctx.h_coords(&b).ok_or_else(|| {
                    let mut r = ValidationReport::new();
                    r.record(false, "H ∘ E ⊆ H", || format!("h{m} ∘ e{i}"));
                    InvalidStructure::new("bracket leaves H", r)
                })?;
                for (m2, c) in coords.into_iter().enumerate() {
                    h_bracket_e[(m * dim_e + i) * dh + m2] = c;
                }
            }
        }
        ctx.pair_h = pair_h;
        ctx.h_bracket_e = h_bracket_e;
        Ok(ctx)
    }

    /// Re-express the whole context in a new basis whose rows are
    /// `new_basis` (first `dim H` rows must span `H`). Used by the
    /// decomposition, which works in a split-adapted basis.
    pub fn rebased(&self, new_basis: &[Vec<Scalar>]) -> Result<HContext, InvalidStructure> {
        let d = self.dim_e;
        assert_eq!(new_basis.len(), d, "new basis must have full length");
        let dh = self.dim_h();
        // columns = new basis vectors; coords(v) = m⁻¹ v.
        let m = Matrix::from_rows(new_basis.to_vec()).transpose();
        let minv = invert(&m).ok_or_else(|| {
            let mut r = ValidationReport::new();
            r.record(false, "split basis is invertible", || String::new());
            InvalidStructure::new("split basis does not span", r)
        })?;
        for (i, row) in new_basis.iter().take(dh).enumerate() {
            if !self.h.contains_vec(row) {
                let mut r = ValidationReport::new();
                r.record(false, "first rows span H", || format!("row {i}"));
                return Err(InvalidStructure::new("split H-part not inside H", r));
            }
        }

        let mut bracket = vec![Scalar::zero(); d * d * d];
        for a in 0..d {
            for b in 0..d {
                let br = self.bracket_vec(&new_basis[a], &new_basis[b]);
                let coords = minv.mul_vec(&br);
                for (c, v) in coords.into_iter().enumerate() {
                    bracket[(a * d + b) * d + c] = v;
                }
            }
        }
        let nabla = new_basis
            .iter()
            .map(|x| {
                let mut acc = Matrix::zeros(self.dim_v, self.dim_v);
                for (i, xi) in x.iter().enumerate() {
                    if !xi.is_zero() {
                        acc = acc.add(&self.nabla[i].scale(xi));
                    }
                }
                acc
            })
            .collect();
        let h_new = Subspace::from_vectors(
            d,
            (0..dh).map(|i| unit(d, i)).collect(),
        );
        let scalars = match &self.scalars {
            None => None,
            Some(layer) => {
                let dim_r = layer.dim_r();
                let act_e: Vec<Matrix> =
                    layer.act_e.iter().map(|a| minv.matmul(&a.matmul(&m))).collect();
                let mut pairing = vec![Scalar::zero(); d * d * dim_r];
                for i in 0..d {
                    for j in 0..d {
                        let val = pairing_vec_layer(layer, d, &new_basis[i], &new_basis[j]);
                        for (a, v) in val.into_iter().enumerate() {
                            pairing[(i * d + j) * dim_r + a] = v;
                        }
                    }
                }
                // ∂f and f·h in the new H coordinates (= first dh coords).
                let mut partial_h = Matrix::zeros(dh, dim_r);
                let mut act_h = vec![Matrix::zeros(dh, dh); dim_r];
                let old_h_basis: Vec<Vec<Scalar>> = (0..dh)
                    .map(|i| new_basis[i].clone())
                    .collect();
                for a in 0..dim_r {
                    // old ∂f_a in ambient coords via the old layer data:
                    let pf_old = {
                        let col: Vec<Scalar> =
                            (0..dh).map(|mm| self.scalars.as_ref().unwrap().partial_h.get(mm, a).clone()).collect();
                        let mut v = vec![Scalar::zero(); d];
                        for (mm, c) in col.iter().enumerate() {
                            for j in 0..d {
                                v[j].add_mul_assign(c, &self.h.basis().get(mm, j).clone());
                            }
                        }
                        v
                    };
                    let coords = minv.mul_vec(&pf_old);
                    for y in 0..dh {
                        partial_h.set(y, a, coords[y].clone());
                    }
                    for (x, hx) in old_h_basis.iter().enumerate() {
                        let img = layer.act_e[a].mul_vec(hx);
                        let coords = minv.mul_vec(&img);
                        for y in 0..dh {
                            act_h[a].set(y, x, coords[y].clone());
                        }
                    }
                }
                Some(ScalarLayer {
                    r: layer.r.clone(),
                    act_e,
                    act_v: layer.act_v.clone(),
                    act_h,
                    pairing,
                    partial_h,
                })
            }
        };
        let mut ctx = HContext {
            dim_e: d,
            dim_v: self.dim_v,
            h: h_new,
            bracket,
            nabla,
            pair_h: Vec::new(),
            h_bracket_e: Vec::new(),
            scalars,
            guard: None,
            complement: (dh..d).map(|i| unit(d, i)).collect(),
        };
        let rebuilt = HContext::from_tensors(
            ctx.dim_e,
            ctx.dim_v,
            ctx.h.clone(),
            ctx.bracket.clone(),
            ctx.nabla.clone(),
            ctx.scalars.take(),
            None,
        )?;
        ctx = rebuilt;
        Ok(ctx)
    }
}

fn pairing_vec_layer(layer: &ScalarLayer, dim_e: usize, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let dim_r = layer.dim_r();
    let mut out = vec![Scalar::zero(); dim_r];
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let c = xi * yj;
            for (a, g) in layer.pairing_r(i, j, dim_e).iter().enumerate() {
                out[a].add_mul_assign(&c, g);
            }
        }
    }
    out
}

fn invert(m: &Matrix) -> Option<Matrix> {
    let n = m.rows();
    if m.cols() != n {
        return None;
    }
    let mut aug = m.hstack(&Matrix::identity(n));
    let pivots = aug.rref_in_place();
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(Matrix::from_fn(n, n, |i, j| aug.get(i, j + n).clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn leibniz_context_tensors() {
        let ctx = HContext::leibniz(
            &fixtures::dim2_leibniz(),
            &fixtures::dim2_h(),
            &fixtures::dim2_rep(),
        )
        .unwrap();
        assert_eq!(ctx.dim_h(), 1);
        assert!(ctx.scalars.is_none());
        // P(e0, e0) = 2 e1 -> H-coords (2).
        assert_eq!(ctx.pair_h_basis(0, 0), &[s(2)][..]);
        assert_eq!(ctx.pair_h_basis(0, 1), &[s(0)][..]);
        // h ∘ e = 0 for the nilpotent fixture.
        assert!(ctx.h_bracket_e.iter().all(Scalar::is_zero));
        // Complement is span{e0}.
        assert_eq!(ctx.complement, vec![vec![s(1), s(0)]]);
    }

    #[test]
    fn rejects_invalid_ideal() {
        let err = HContext::leibniz(
            &fixtures::dim2_leibniz(),
            &Subspace::full(2),
            &fixtures::dim2_rep(),
        );
        assert!(err.is_err());
    }

    #[test]
    fn rebase_preserves_bracket() {
        let ctx = HContext::leibniz(
            &fixtures::heisenberg(),
            &fixtures::heisenberg_h(),
            &fixtures::heisenberg_rep(),
        )
        .unwrap();
        // New basis: h-part e2, then x-parts (e0 + e1, e1).
        let new_basis = vec![
            vec![s(0), s(0), s(1)],
            vec![s(1), s(1), s(0)],
            vec![s(0), s(1), s(0)],
        ];
        let re = ctx.rebased(&new_basis).unwrap();
        // [e0+e1, e1] = [e0, e1] = e2 -> new coords (1, 0, 0).
        assert_eq!(re.bracket_basis(1, 2), &[s(1), s(0), s(0)][..]);
        assert_eq!(re.dim_h(), 1);
    }
}
