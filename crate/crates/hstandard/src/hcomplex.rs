//! The H-standard coboundary `d = d₀ + δ + d′` and cohomology.
//!
//! `d₀` is the Leibniz coboundary of the ambient bracket with the symmetric
//! coefficient extension `(V, ∇, −∇)`, applied to the ambient arguments of
//! each component; `δ` moves one `H`-slot entry to the front of the ambient
//! arguments; `d′` substitutes `α ∘ e_a` back into the vacated `H`-slot.
//! Everything is a linear map between raw coordinate spaces, restricted to
//! the valid subspaces; cohomology ranks are exact.

use crate::cochain::{
    cochain_space, verify_conditions, verify_conditions_many, Cochain, Coef, ComplexBasis, Layout,
    ReducedLayout, SpaceBuilder, Term,
};
use crate::cdalgebra::{CourantDorfmanAlgebra, DegreeGuard};
use crate::context::HContext;
use crate::leibniz::LeibnizAlgebra;
use crate::matrix::{Matrix, RrefAccum, Subspace};
use crate::report::{InvalidStructure, ValidationReport};
use crate::scalar::Scalar;

/// Which summands of the coboundary to apply.
#[derive(Clone, Copy)]
pub struct DParts {
    pub d0: bool,
    pub delta: bool,
    pub dprime: bool,
}

impl DParts {
    pub const ALL: DParts = DParts {
        d0: true,
        delta: true,
        dprime: true,
    };
}

/// One resolved term of an output coordinate: reads the input block at
/// `in_base .. in_base + dim_v`.
enum DTerm {
    /// `coeff · value[v]` (diagonal in the coefficients).
    Diag(usize, Scalar),
    /// `sign · (∇_{e_i} value)[v]`.
    Nabla(usize, usize, i32),
}

/// Enumerate the output coordinates of `d : C^n → C^{n+1}` with their
/// resolved input term lists. Term lists are built once per output block
/// (all `V`-coordinates share them).
fn for_each_output(
    ctx: &HContext,
    lin: &Layout,
    lout: &Layout,
    parts: DParts,
    mut f: impl FnMut(usize, &[DTerm]),
) {
    let dim_h = ctx.dim_h();
    let mut terms: Vec<DTerm> = Vec::new();
    for comp in &lout.comps {
        let k = comp.k;
        let arity = comp.arity;
        let has_same_k = k < lin.comps.len();
        for ti in 0..comp.n_tuples {
            let t = lout.decode_tuple(k, ti);
            for ms in &comp.msets {
                terms.clear();
                if parts.d0 && has_same_k {
                    // ∇ terms: Σ_a (-1)^a ∇_{t_a} ω_k(t \ a; ms), 0-based sign.
                    for a in 0..arity {
                        let rest: Vec<u8> = t
                            .iter()
                            .enumerate()
                            .filter(|(p, _)| *p != a)
                            .map(|(_, &x)| x)
                            .collect();
                        let base = lin.index(k, &rest, ms, 0);
                        let sign = if a % 2 == 0 { 1 } else { -1 };
                        terms.push(DTerm::Nabla(base, t[a] as usize, sign));
                    }
                    // bracket terms: Σ_{a<b} (-1)^{a+1} ω_k(.. ê_a .. e_a∘e_b at b ..).
                    for a in 0..arity {
                        let sign_a = if a % 2 == 0 { -1 } else { 1 };
                        for b in a + 1..arity {
                            let row = ctx.bracket_basis(t[a] as usize, t[b] as usize);
                            for (c, coef) in row.iter().enumerate() {
                                if coef.is_zero() {
                                    continue;
                                }
                                let mut tt = Vec::with_capacity(arity - 1);
                                for p in 0..arity {
                                    if p == a {
                                        continue;
                                    }
                                    tt.push(if p == b { c as u8 } else { t[p] });
                                }
                                let base = lin.index(k, &tt, ms, 0);
                                let val = if sign_a > 0 { coef.clone() } else { -coef };
                                terms.push(DTerm::Diag(base, val));
                            }
                        }
                    }
                }
                if parts.delta && k >= 1 {
                    // Σ_i ω_{k-1}(h_{ms_i}, t; ms \ i), slots with multiplicity.
                    for i in 0..ms.len() {
                        let mut rest = ms.clone();
                        rest.remove(i);
                        let hvec = ctx.h_basis_vec(ms[i] as usize);
                        for (e, c) in hvec.iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            let mut tt = Vec::with_capacity(arity + 1);
                            tt.push(e as u8);
                            tt.extend_from_slice(&t);
                            let base = lin.index(k - 1, &tt, &rest, 0);
                            terms.push(DTerm::Diag(base, c.clone()));
                        }
                    }
                }
                if parts.dprime && has_same_k && dim_h > 0 {
                    // Σ_{a,i} (-1)^a ω_k(t \ a; (ms \ i) ∪ (h_i ∘ e_a)), 0-based sign.
                    for a in 0..arity {
                        let sign = if a % 2 == 0 { 1 } else { -1 };
                        let rest_t: Vec<u8> = t
                            .iter()
                            .enumerate()
                            .filter(|(p, _)| *p != a)
                            .map(|(_, &x)| x)
                            .collect();
                        for i in 0..ms.len() {
                            let mut rest = ms.clone();
                            rest.remove(i);
                            let row = ctx.h_bracket_e_basis(ms[i] as usize, t[a] as usize);
                            for (m2, c) in row.iter().enumerate() {
                                if c.is_zero() {
                                    continue;
                                }
                                let slot = crate::cochain::insert_sorted(&rest, m2 as u8);
                                let base = lin.index(k, &rest_t, &slot, 0);
                                let val = if sign > 0 { c.clone() } else { -c };
                                terms.push(DTerm::Diag(base, val));
                            }
                        }
                    }
                }
                let out_base = lout.index(k, &t, ms, 0);
                f(out_base, &terms);
            }
        }
    }
}

/// Apply the selected parts of the coboundary to several raw vectors at
/// once (the term lists are shared across inputs).
pub fn apply_parts_many(
    ctx: &HContext,
    degree: usize,
    raws: &[&[Scalar]],
    parts: DParts,
) -> Vec<Vec<Scalar>> {
    let lin = Layout::new(ctx, degree);
    let lout = Layout::new(ctx, degree + 1);
    let dv = lin.dim_v;
    let mut outs = vec![vec![Scalar::zero(); lout.total]; raws.len()];
    for_each_output(ctx, &lin, &lout, parts, |out_base, terms| {
        for (ri, raw) in raws.iter().enumerate() {
            let out = &mut outs[ri];
            for term in terms {
                match term {
                    DTerm::Diag(in_base, c) => {
                        for v in 0..dv {
                            out[out_base + v].add_mul_assign(c, &raw[in_base + v]);
                        }
                    }
                    DTerm::Nabla(in_base, i, sign) => {
                        let m = &ctx.nabla[*i];
                        for v in 0..dv {
                            let mut acc = Scalar::zero();
                            for u in 0..dv {
                                acc.add_mul_assign(m.get(v, u), &raw[in_base + u]);
                            }
                            if *sign < 0 {
                                acc = -acc;
                            }
                            out[out_base + v] += &acc;
                        }
                    }
                }
            }
        }
    });
    outs
}

pub fn apply_parts(ctx: &HContext, degree: usize, raw: &[Scalar], parts: DParts) -> Vec<Scalar> {
    apply_parts_many(ctx, degree, &[raw], parts).pop().unwrap()
}

/// `d₀` alone, as raw component tensors of degree `n+1`.
pub fn apply_d0(ctx: &HContext, w: &Cochain) -> Cochain {
    Cochain {
        degree: w.degree + 1,
        data: apply_parts(ctx, w.degree, &w.data, DParts { d0: true, delta: false, dprime: false }),
    }
}

/// `δ` alone. `(δω)_0 = 0` by definition.
pub fn apply_delta(ctx: &HContext, w: &Cochain) -> Cochain {
    Cochain {
        degree: w.degree + 1,
        data: apply_parts(ctx, w.degree, &w.data, DParts { d0: false, delta: true, dprime: false }),
    }
}

/// `d′` alone.
pub fn apply_dprime(ctx: &HContext, w: &Cochain) -> Cochain {
    Cochain {
        degree: w.degree + 1,
        data: apply_parts(ctx, w.degree, &w.data, DParts { d0: false, delta: false, dprime: true }),
    }
}

/// The raw coboundary without validation.
pub fn coboundary_raw(ctx: &HContext, degree: usize, raw: &[Scalar]) -> Vec<Scalar> {
    apply_parts(ctx, degree, raw, DParts::ALL)
}

/// The full coboundary; the output is validated against the degree-`n+1`
/// conditions (closure). A validation failure is a hard internal error:
/// it signals an implementation bug or an invalid context.
pub fn coboundary(ctx: &HContext, w: &Cochain) -> Result<Cochain, InvalidStructure> {
    let data = coboundary_raw(ctx, w.degree, &w.data);
    let lout = Layout::new(ctx, w.degree + 1);
    let rep = verify_conditions(ctx, &lout, &data);
    if !rep.is_valid() {
        return Err(InvalidStructure::new("coboundary closure violation", rep));
    }
    Ok(Cochain {
        degree: w.degree + 1,
        data,
    })
}

/// Cohomology of one degree with deterministic representatives.
#[derive(Clone, Debug)]
pub struct DegreeCohomology {
    pub dim: usize,
    pub representatives: Vec<Cochain>,
}

/// Exact cohomology in degrees `0..=n_max`.
///
/// Every image `d(basis vector)` is certified against the closure
/// conditions before its reduced readout is trusted for rank computations.
pub fn cohomology(ctx: &HContext, n_max: usize) -> Vec<DegreeCohomology> {
    let bases: Vec<ComplexBasis> = (0..=n_max).map(|n| cochain_space(ctx, n)).collect();
    let mut ranks = Vec::with_capacity(n_max + 1);
    let mut kernels: Vec<Subspace> = Vec::with_capacity(n_max + 1);
    let mut images: Vec<Vec<Vec<Scalar>>> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let basis = &bases[n];
        let rows: Vec<&[Scalar]> = (0..basis.dim()).map(|i| basis.basis_vec(i)).collect();
        let imgs = apply_parts_many(ctx, n, &rows, DParts::ALL);
        let lout = Layout::new(ctx, n + 1);
        let img_refs: Vec<&[Scalar]> = imgs.iter().map(|v| v.as_slice()).collect();
        let ok = verify_conditions_many(ctx, &lout, &img_refs);
        assert!(
            ok.iter().all(|&b| b),
            "closure violation at degree {n}: d does not preserve the conditions"
        );
        // Reduced readout is injective on valid cochains, so ranks are exact.
        let reduced = ReducedLayout::new(&lout);
        let m = Matrix::from_fn(reduced.total, basis.dim(), |i, j| {
            reduced.readout(&lout, &imgs[j])[i].clone()
        });
        kernels.push(m.nullspace());
        ranks.push(m.rank());
        images.push(imgs);
    }

    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let basis = &bases[n];
        let rank_prev = if n == 0 { 0 } else { ranks[n - 1] };
        let kernel = &kernels[n];
        let dim = kernel.dim() - rank_prev;
        let mut reps = Vec::new();
        if dim > 0 {
            // Image of d_{n-1} in basis coordinates.
            let img_coords: Vec<Vec<Scalar>> = if n == 0 {
                Vec::new()
            } else {
                images[n - 1].iter().map(|w| basis.coords_of(w)).collect()
            };
            let mut span = Subspace::from_vectors(basis.dim(), img_coords);
            assert_eq!(span.dim(), rank_prev, "image must embed in the next space");
            for v in kernel.basis_vectors() {
                if reps.len() == dim {
                    break;
                }
                if !span.contains_vec(&v) {
                    span = span.sum(&Subspace::from_vectors(basis.dim(), vec![v.clone()]));
                    reps.push(Cochain {
                        degree: n,
                        data: basis.from_coords(&v),
                    });
                }
            }
        }
        out.push(DegreeCohomology {
            dim,
            representatives: reps,
        });
    }
    out
}

pub fn cohomology_dims(ctx: &HContext, n_max: usize) -> Vec<usize> {
    cohomology(ctx, n_max).iter().map(|d| d.dim).collect()
}

/// The invariants `{v : ∇_e v = 0 ∀e}`; equals `H⁰`.
pub fn invariants(ctx: &HContext) -> Subspace {
    let dv = ctx.dim_v;
    let m = Matrix::from_fn(ctx.dim_e * dv, dv, |row, u| {
        let (i, v) = (row / dv, row % dv);
        ctx.nabla[i].get(v, u).clone()
    });
    m.nullspace()
}

/// Derivations `D : E → V` with `D(x∘y) = ∇_x D(y) − ∇_y D(x)` and
/// `D|_H = 0`, modulo inner derivations `e ↦ ∇_e v`. The dimension equals
/// `H¹`.
pub struct OuterDerivations {
    pub dim: usize,
    /// Representatives; column `j` of each matrix is `D(e_j)`.
    pub representatives: Vec<Matrix>,
}

pub fn outer_derivations(ctx: &HContext) -> OuterDerivations {
    let d = ctx.dim_e;
    let dv = ctx.dim_v;
    let width = d * dv; // unknowns x[j*dv + v] = D(e_j)_v
    let mut acc = RrefAccum::new(width);
    for i in 0..d {
        for j in 0..d {
            for v in 0..dv {
                let mut row = vec![Scalar::zero(); width];
                for (k, c) in ctx.bracket_basis(i, j).iter().enumerate() {
                    row[k * dv + v] += c;
                }
                for u in 0..dv {
                    row[j * dv + u] -= ctx.nabla[i].get(v, u);
                    row[i * dv + u] += ctx.nabla[j].get(v, u);
                }
                acc.insert(row);
            }
        }
    }
    for m in 0..ctx.dim_h() {
        let hv = ctx.h_basis_vec(m).to_vec();
        for v in 0..dv {
            let mut row = vec![Scalar::zero(); width];
            for (j, c) in hv.iter().enumerate() {
                row[j * dv + v] += c;
            }
            acc.insert(row);
        }
    }
    let derivations = acc.nullspace();
    // Inner derivations v ↦ (e_j ↦ ∇_{e_j} v).
    let inner: Vec<Vec<Scalar>> = (0..dv)
        .map(|u| {
            let mut w = vec![Scalar::zero(); width];
            for j in 0..d {
                for v in 0..dv {
                    w[j * dv + v] = ctx.nabla[j].get(v, u).clone();
                }
            }
            w
        })
        .collect();
    let mut span = Subspace::from_vectors(width, inner);
    assert!(
        derivations.contains(&span),
        "inner derivations must be derivations vanishing on H"
    );
    let dim = derivations.dim() - span.dim();
    let mut representatives = Vec::new();
    for v in derivations.basis_vectors() {
        if representatives.len() == dim {
            break;
        }
        if !span.contains_vec(&v) {
            span = span.sum(&Subspace::from_vectors(width, vec![v.clone()]));
            representatives.push(Matrix::from_fn(dv, d, |vv, j| v[j * dv + vv].clone()));
        }
    }
    OuterDerivations {
        dim,
        representatives,
    }
}

/// The naive subcomplex `C_nv`: cochains with vanishing higher components
/// and vanishing contraction with `H`.
pub fn nv_subcomplex(ctx: &HContext, degree: usize) -> ComplexBasis {
    let builder = SpaceBuilder::new(ctx, degree);
    let mut acc = RrefAccum::new(builder.reduced.total);
    builder.push_r_linearity_rows(&mut acc);
    let dv = builder.layout.dim_v;
    // Straightened coordinates with k ≥ 1 vanish; the remaining raw k ≥ 1
    // coordinates are expansions of these, so the whole tail vanishes.
    for comp in builder.reduced.comps.iter().skip(1) {
        let count = comp.tuples.len() * comp.msets.len();
        for b in 0..count {
            for v in 0..dv {
                let mut row = vec![Scalar::zero(); builder.reduced.total];
                row[(comp.offset + b) * dv + v] = Scalar::one();
                acc.insert(row);
            }
        }
    }
    // ι_α ω₀ = 0 for every H basis vector, on every remaining tuple.
    if degree >= 1 {
        let rest_count = ctx.dim_e.pow((degree - 1) as u32);
        let sub = Layout::new(ctx, degree - 1); // for decoding rest tuples
        for m in 0..ctx.dim_h() {
            let hv = ctx.h_basis_vec(m).to_vec();
            for ri in 0..rest_count {
                let rest = sub.decode_tuple(0, ri);
                let mut terms = Vec::new();
                for (e, c) in hv.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut t = Vec::with_capacity(degree);
                    t.push(e as u8);
                    t.extend_from_slice(&rest);
                    terms.push(Term {
                        tuple: t,
                        ms: Vec::new(),
                        coef: Coef::Diag(c.clone()),
                    });
                }
                for row in builder.project_equation(&terms) {
                    acc.insert(row);
                }
            }
        }
    }
    builder.finish(acc.nullspace())
}

/// Cohomology dimensions of the naive subcomplex; checks `d`-stability.
pub fn nv_cohomology_dims(ctx: &HContext, n_max: usize) -> Vec<usize> {
    let bases: Vec<ComplexBasis> = (0..=n_max + 1).map(|n| nv_subcomplex(ctx, n)).collect();
    let mut ranks = Vec::new();
    let mut kernel_dims = Vec::new();
    for n in 0..=n_max {
        let rows: Vec<&[Scalar]> = (0..bases[n].dim()).map(|i| bases[n].basis_vec(i)).collect();
        let imgs = apply_parts_many(ctx, n, &rows, DParts::ALL);
        for img in &imgs {
            assert!(
                bases[n + 1].contains(img),
                "C_nv is not d-stable at degree {n}"
            );
        }
        let lout = Layout::new(ctx, n + 1);
        let reduced = ReducedLayout::new(&lout);
        let m = Matrix::from_fn(reduced.total, imgs.len(), |i, j| {
            reduced.readout(&lout, &imgs[j])[i].clone()
        });
        ranks.push(m.rank());
        kernel_dims.push(bases[n].dim() - m.rank());
    }
    (0..=n_max)
        .map(|n| kernel_dims[n] - if n == 0 { 0 } else { ranks[n - 1] })
        .collect()
}

/// A central extension built from a 2-cocycle.
pub enum ExtendedAlgebra {
    Leibniz(LeibnizAlgebra),
    CourantDorfman(CourantDorfmanAlgebra),
}

pub struct Extension {
    pub algebra: ExtendedAlgebra,
    /// `H̄ = {α − ω₁(α)}` inside the extended space.
    pub h_bar: Subspace,
    /// Validation of the extension (always valid on success paths).
    pub report: ValidationReport,
}

/// Build the extension `E ⊕ V` from a closed degree-2 cochain: bracket
/// `(e₁+v₁) ∘̄ (e₂+v₂) = e₁∘e₂ + ∇_{e₁}v₂ − ∇_{e₂}v₁ + ω₀(e₁,e₂)`, pairing
/// extended by zero, `∂̄f = ∂f − ω₁(∂f)`. The output is revalidated; `H̄`
/// is checked to be a two-sided isotropic ideal (its left center can be
/// larger than `H̄`, so center containment is not required).
pub fn extension_from_2cocycle(ctx: &HContext, w: &Cochain) -> Result<Extension, InvalidStructure> {
    assert_eq!(w.degree, 2, "extension input must be a 2-cochain");
    let layout = Layout::new(ctx, 2);
    let dw = coboundary(ctx, w)?;
    if !dw.is_zero() {
        let mut rep = ValidationReport::new();
        rep.record(false, "dω = 0", || String::from("input 2-cochain is not closed"));
        return Err(InvalidStructure::new("not a cocycle", rep));
    }

    let de = ctx.dim_e;
    let dv = ctx.dim_v;
    let dim = de + dv;
    let mut bracket = vec![Scalar::zero(); dim * dim * dim];
    let mut put = |i: usize, j: usize, k: usize, val: Scalar| {
        bracket[(i * dim + j) * dim + k] = val;
    };
    for i in 0..de {
        for j in 0..de {
            for (k, c) in ctx.bracket_basis(i, j).iter().enumerate() {
                put(i, j, k, c.clone());
            }
            for v in 0..dv {
                put(i, j, de + v, w.get(&layout, 0, &[i as u8, j as u8], &[], v).clone());
            }
        }
        for u in 0..dv {
            for v in 0..dv {
                put(i, de + u, de + v, ctx.nabla[i].get(v, u).clone());
            }
        }
    }
    for u in 0..dv {
        for j in 0..de {
            for v in 0..dv {
                put(de + u, j, de + v, -ctx.nabla[j].get(v, u));
            }
        }
    }

    // H̄ basis: h_m − ω₁(h_m).
    let h_bar_vecs: Vec<Vec<Scalar>> = (0..ctx.dim_h())
        .map(|m| {
            let mut v = vec![Scalar::zero(); dim];
            v[..de].clone_from_slice(ctx.h_basis_vec(m));
            for u in 0..dv {
                v[de + u] = -w.get(&layout, 1, &[], &[m as u8], u);
            }
            v
        })
        .collect();
    let h_bar = Subspace::from_vectors(dim, h_bar_vecs);

    match &ctx.scalars {
        None => {
            let alg = LeibnizAlgebra::new(dim, bracket);
            let mut report = alg.validate();
            if !report.is_valid() {
                return Err(InvalidStructure::new("extension bracket is not Leibniz", report));
            }
            report.merge(alg.validate_h_ideal_with(&h_bar, false));
            if !report.is_valid() {
                return Err(InvalidStructure::new("H̄ is not an isotropic ideal", report));
            }
            Ok(Extension {
                algebra: ExtendedAlgebra::Leibniz(alg),
                h_bar,
                report,
            })
        }
        Some(layer) => {
            let dr = layer.dim_r();
            let module_action: Vec<Matrix> = (0..dr)
                .map(|a| {
                    Matrix::from_fn(dim, dim, |i, j| {
                        if i < de && j < de {
                            layer.act_e[a].get(i, j).clone()
                        } else if i >= de && j >= de {
                            layer.act_v[a].get(i - de, j - de).clone()
                        } else {
                            Scalar::zero()
                        }
                    })
                })
                .collect();
            let mut pairing = vec![Scalar::zero(); dim * dim * dr];
            for i in 0..de {
                for j in 0..de {
                    for a in 0..dr {
                        pairing[(i * dim + j) * dr + a] =
                            layer.pairing_r(i, j, de)[a].clone();
                    }
                }
            }
            // ∂̄ f = ∂f − ω₁(∂f): lift ∂f from its H-coordinates.
            let mut partial = Matrix::zeros(dim, dr);
            for a in 0..dr {
                for m in 0..ctx.dim_h() {
                    let c = layer.partial_h.get(m, a).clone();
                    if c.is_zero() {
                        continue;
                    }
                    for (j, hj) in ctx.h_basis_vec(m).iter().enumerate() {
                        let t = partial.get(j, a) + &(&c * hj);
                        partial.set(j, a, t);
                    }
                    for v in 0..dv {
                        let t =
                            partial.get(de + v, a) - &(&c * w.get(&layout, 1, &[], &[m as u8], v));
                        partial.set(de + v, a, t);
                    }
                }
            }
            let guard = ctx.guard.as_ref().map(|g| DegreeGuard {
                max_degree: g.max_degree,
                e_degrees: {
                    let mut d = g.e_degrees.clone();
                    d.extend_from_slice(&g.v_degrees);
                    d
                },
                r_degrees: g.r_degrees.clone(),
                v_degrees: Vec::new(),
            });
            let cd = CourantDorfmanAlgebra {
                r: layer.r.clone(),
                dim_e: dim,
                module_action,
                pairing,
                partial,
                bracket,
                guard,
            };
            let mut report = cd.validate();
            if !report.is_valid() {
                return Err(InvalidStructure::new(
                    "extension is not a Courant-Dorfman algebra",
                    report,
                ));
            }
            report.merge(cd.validate_h_ideal(&h_bar));
            if !report.is_valid() {
                return Err(InvalidStructure::new("H̄ is not an isotropic ideal", report));
            }
            Ok(Extension {
                algebra: ExtendedAlgebra::CourantDorfman(cd),
                h_bar,
                report,
            })
        }
    }
}

/// Deterministic random element of a cochain space (small rational
/// coefficients over the canonical basis).
pub fn random_combination(basis: &ComplexBasis, rng: &mut impl rand::Rng) -> Vec<Scalar> {
    let coords: Vec<Scalar> = (0..basis.dim())
        .map(|_| Scalar::new(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=4)))
        .collect();
    basis.from_coords(&coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::leibniz::LeftRepresentation;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn dim2_ctx() -> HContext {
        HContext::leibniz(
            &fixtures::dim2_leibniz(),
            &fixtures::dim2_h(),
            &fixtures::dim2_rep(),
        )
        .unwrap()
    }

    fn omni1_ctx() -> HContext {
        HContext::leibniz(
            &fixtures::omni_lie(1),
            &fixtures::omni_lie_h(1),
            &fixtures::omni_lie_rep(1),
        )
        .unwrap()
    }

    fn heis_ctx() -> HContext {
        HContext::leibniz(
            &fixtures::heisenberg(),
            &fixtures::heisenberg_h(),
            &fixtures::heisenberg_rep(),
        )
        .unwrap()
    }

    #[test]
    fn d0_on_degree_zero_is_nabla() {
        let ctx = omni1_ctx();
        let l0 = Layout::new(&ctx, 0);
        let w = Cochain {
            degree: 0,
            data: vec![s(1)],
        };
        let dw = apply_d0(&ctx, &w);
        let l1 = Layout::new(&ctx, 1);
        // (d v)(e) = ∇_e v: τ(A) = 1, τ(v) = 0.
        assert_eq!(dw.get(&l1, 0, &[0], &[], 0), &s(1));
        assert_eq!(dw.get(&l1, 0, &[1], &[], 0), &s(0));
        let _ = l0;
    }

    #[test]
    fn d0_on_degree_one_matches_spec_example() {
        // dim-2 fixture, ω(e0) = 0, ω(e1) = 1: only (d₀ω)(e0,e0) = -1.
        let ctx = dim2_ctx();
        let l1 = Layout::new(&ctx, 1);
        let mut w = Cochain::zero(&l1);
        w.data[l1.index(0, &[1], &[], 0)] = s(1);
        let dw = apply_d0(&ctx, &w);
        let l2 = Layout::new(&ctx, 2);
        for i in 0..2u8 {
            for j in 0..2u8 {
                let expect = if (i, j) == (0, 0) { s(-1) } else { s(0) };
                assert_eq!(dw.get(&l2, 0, &[i, j], &[], 0), &expect, "({i},{j})");
            }
        }
    }

    #[test]
    fn delta_moves_slot_to_front() {
        // ω ∈ C¹: (δω)₁(;α) = ω₀(α).
        let ctx = dim2_ctx();
        let l1 = Layout::new(&ctx, 1);
        let mut w = Cochain::zero(&l1);
        w.data[l1.index(0, &[1], &[], 0)] = s(7);
        let dlt = apply_delta(&ctx, &w);
        let l2 = Layout::new(&ctx, 2);
        assert_eq!(dlt.get(&l2, 1, &[], &[0], 0), &s(7));
        // (δω)₀ = 0 always.
        for i in 0..2u8 {
            for j in 0..2u8 {
                assert!(dlt.get(&l2, 0, &[i, j], &[], 0).is_zero());
            }
        }
    }

    #[test]
    fn dprime_vanishes_for_central_h() {
        // Heisenberg center: h ∘ L = 0 so d' = 0.
        let ctx = heis_ctx();
        let basis = cochain_space(&ctx, 2);
        for i in 0..basis.dim() {
            let w = Cochain {
                degree: 2,
                data: basis.basis_vec(i).to_vec(),
            };
            assert!(apply_dprime(&ctx, &w).is_zero());
        }
    }

    #[test]
    fn flatness_on_fixture_bases() {
        for ctx in [dim2_ctx(), omni1_ctx(), heis_ctx()] {
            for n in 0..=3 {
                let basis = cochain_space(&ctx, n);
                let rows: Vec<&[Scalar]> =
                    (0..basis.dim()).map(|i| basis.basis_vec(i)).collect();
                let dd = apply_parts_many(&ctx, n, &rows, DParts::ALL);
                let refs: Vec<&[Scalar]> = dd.iter().map(|v| v.as_slice()).collect();
                let ddd = apply_parts_many(&ctx, n + 1, &refs, DParts::ALL);
                for v in &ddd {
                    assert!(v.iter().all(Scalar::is_zero), "d² ≠ 0 at degree {n}");
                }
            }
        }
    }

    #[test]
    fn dim2_cohomology_dims() {
        let dims = cohomology_dims(&dim2_ctx(), 3);
        assert_eq!(dims, vec![1, 1, 0, 0]);
    }

    #[test]
    fn omni1_cohomology_trivial() {
        let dims = cohomology_dims(&omni1_ctx(), 3);
        assert_eq!(dims, vec![0, 0, 0, 0]);
    }

    #[test]
    fn heisenberg_cohomology_dims() {
        let dims = cohomology_dims(&heis_ctx(), 3);
        assert_eq!(dims, vec![1, 2, 1, 0]);
    }

    #[test]
    fn degree_interpretations_match() {
        for ctx in [dim2_ctx(), omni1_ctx(), heis_ctx()] {
            let dims = cohomology_dims(&ctx, 1);
            assert_eq!(invariants(&ctx).dim(), dims[0]);
            assert_eq!(outer_derivations(&ctx).dim, dims[1]);
        }
    }

    #[test]
    fn nv_dims_match_quotient_ce() {
        // Lemma: H(C_nv) = CE(L/H, V), degree by degree.
        let cases: Vec<(HContext, Vec<usize>)> = vec![
            (dim2_ctx(), vec![1, 1, 0, 0]),
            (omni1_ctx(), vec![0, 0, 0, 0]),
            (heis_ctx(), vec![1, 2, 1, 0]),
        ];
        for (ctx, expect) in cases {
            assert_eq!(nv_cohomology_dims(&ctx, 3), expect);
        }
    }

    #[test]
    fn nv_spaces_on_dim2() {
        let ctx = dim2_ctx();
        assert_eq!(nv_subcomplex(&ctx, 0).dim(), 1);
        assert_eq!(nv_subcomplex(&ctx, 1).dim(), 1); // {ω : ω(e1) = 0}
        assert_eq!(nv_subcomplex(&ctx, 2).dim(), 0);
    }

    #[test]
    fn extension_semidirect_and_isomorphism() {
        let ctx = dim2_ctx();
        let l2 = Layout::new(&ctx, 2);
        // ω = 0: semidirect product, always valid.
        let zero = Cochain::zero(&l2);
        let ext = extension_from_2cocycle(&ctx, &zero).unwrap();
        let ExtendedAlgebra::Leibniz(alg) = &ext.algebra else {
            panic!("expected Leibniz output")
        };
        assert!(alg.validate().is_valid());
        assert_eq!(ext.h_bar.dim(), 1);

        // A non-closed cochain must be rejected.
        let basis = cochain_space(&ctx, 2);
        let mut some_non_cocycle = None;
        for i in 0..basis.dim() {
            let w = Cochain {
                degree: 2,
                data: basis.basis_vec(i).to_vec(),
            };
            let dw = coboundary(&ctx, &w).unwrap();
            if !dw.is_zero() {
                some_non_cocycle = Some(w);
                break;
            }
        }
        if let Some(w) = some_non_cocycle {
            assert!(extension_from_2cocycle(&ctx, &w).is_err());
        }
    }

    #[test]
    fn sl2_h_zero_reduces_to_alternating_leibniz_complex() {
        // With pairing ≡ 0 and H = 0 the complex is the alternating part of
        // the Loday-Pirashvili complex and cohomology matches CE.
        let ctx = HContext::leibniz(
            &fixtures::sl2(),
            &Subspace::zero(3),
            &LeftRepresentation::trivial(3, 1),
        )
        .unwrap();
        assert_eq!(cohomology_dims(&ctx, 3), vec![1, 0, 0, 1]);
    }
}
