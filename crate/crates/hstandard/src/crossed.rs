//! Truncated crossed products `S(Z) ⊗ L`.
//!
//! A Leibniz algebra `L` with left center `Z` yields a Courant-Dorfman
//! algebra on `S(Z) ⊗ L`: scalars are the symmetric algebra on `Z`, the
//! pairing is the scalar-bilinear extension of `(·,·)`, `∂` extends the
//! inclusion `Z ↪ L` by the Leibniz rule, and the bracket is
//!
//! `f₁e₁ ∘ f₂e₂ = f₁f₂(e₁∘e₂) + ⟨e₁,e₂⟩f₂∂f₁ + ⟨e₁,∂f₂⟩f₁e₂ − ⟨e₂,∂f₁⟩f₂e₁`.
//!
//! The symmetric algebra is truncated at a degree cap `N` (the quotient by
//! the ideal of degree > N); every structure tensor here is the image of
//! the graded untruncated tensor under that quotient. Identities that
//! would apply `∂` to already-truncated values can fail near the cap, so
//! axiom checks carry the degree guard.
//!
//! The module also provides the induced ideal `S(Z)⊗H` and representation
//! on `S(Z)⊗V`, and the restriction/extension maps `ψ`/`φ` between the
//! complex of `L` with coefficients `S(Z)⊗V` and the complex of the
//! crossed product.

use crate::cdalgebra::{CdHData, CommutativeAlgebra, CourantDorfmanAlgebra, DegreeGuard};
use crate::cochain::{insert_sorted, Cochain, Layout};
use crate::context::HContext;
use crate::leibniz::{unit, LeftRepresentation, LeibnizAlgebra};
use crate::matrix::{Matrix, Subspace};
use crate::report::{InvalidStructure, ValidationReport};
use crate::scalar::Scalar;
use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

/// Monomial basis of `S(Z)` truncated above total degree `N`, graded-lex.
#[derive(Clone, Debug)]
pub struct TruncatedSymmetricAlgebra {
    pub num_gens: usize,
    pub max_degree: usize,
    pub monomials: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
}

impl TruncatedSymmetricAlgebra {
    pub fn new(num_gens: usize, max_degree: usize) -> Self {
        let mut monomials = Vec::new();
        // graded-lex: by total degree, then lexicographic on exponents
        for total in 0..=max_degree {
            let mut cur = vec![0u8; num_gens];
            fn rec(pos: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
                if pos + 1 == cur.len() {
                    cur[pos] = left as u8;
                    out.push(cur.clone());
                    return;
                }
                for take in (0..=left).rev() {
                    cur[pos] = take as u8;
                    rec(pos + 1, left - take, cur, out);
                }
            }
            if num_gens == 0 {
                if total == 0 {
                    monomials.push(Vec::new());
                }
                continue;
            }
            rec(0, total, &mut cur, &mut monomials);
        }
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        TruncatedSymmetricAlgebra {
            num_gens,
            max_degree,
            monomials,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn degree(&self, a: usize) -> usize {
        self.monomials[a].iter().map(|&x| x as usize).sum()
    }

    /// Index of the product monomial, or `None` when it truncates to zero.
    pub fn mul_monomial(&self, a: usize, b: usize) -> Option<usize> {
        if self.degree(a) + self.degree(b) > self.max_degree {
            return None;
        }
        let sum: Vec<u8> = self.monomials[a]
            .iter()
            .zip(&self.monomials[b])
            .map(|(x, y)| x + y)
            .collect();
        Some(self.index[&sum])
    }

    /// Index of the degree-1 monomial `z_g`, when `N ≥ 1`.
    pub fn gen_index(&self, g: usize) -> Option<usize> {
        if self.max_degree == 0 {
            return None;
        }
        let mut m = vec![0u8; self.num_gens];
        m[g] = 1;
        Some(self.index[&m])
    }

    /// `∂(z^A) = Σ_g A_g · z^{A − e_g} ⊗ z_g` as `(monomial, generator,
    /// multiplicity)` triples.
    pub fn partial_monomial(&self, a: usize) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::new();
        for g in 0..self.num_gens {
            let e = self.monomials[a][g];
            if e == 0 {
                continue;
            }
            let mut m = self.monomials[a].clone();
            m[g] -= 1;
            out.push((self.index[&m], g, e as i64));
        }
        out
    }

    pub fn algebra(&self) -> CommutativeAlgebra {
        let d = self.dim();
        let mut mult = vec![Scalar::zero(); d * d * d];
        for a in 0..d {
            for b in 0..d {
                if let Some(c) = self.mul_monomial(a, b) {
                    mult[(a * d + b) * d + c] = Scalar::one();
                }
            }
        }
        let mut unit_vec = vec![Scalar::zero(); d];
        unit_vec[0] = Scalar::one(); // exponent 0 sorts first in graded-lex
        CommutativeAlgebra {
            dim_r: d,
            mult,
            unit: unit_vec,
        }
    }
}

/// The assembled crossed product with its induced `H`-data and the base
/// ingredients needed by `ψ`/`φ`.
pub struct CrossedProduct {
    pub base: LeibnizAlgebra,
    pub base_h: Subspace,
    pub base_rep: LeftRepresentation,
    /// Basis of the left center used as generators of `S(Z)` (rows).
    pub z_basis: Vec<Vec<Scalar>>,
    pub sym: TruncatedSymmetricAlgebra,
    pub cd: CourantDorfmanAlgebra,
    pub hdata: CdHData,
    /// Axiom identities are exact on tuples of total degree ≤ this.
    pub guard_degree: usize,
    /// Guarded validation summary of the Courant-Dorfman structure.
    pub report: ValidationReport,
}

struct Assembler<'a> {
    alg: &'a LeibnizAlgebra,
    sym: &'a TruncatedSymmetricAlgebra,
    z_space: Subspace,
    z_basis: Vec<Vec<Scalar>>,
    /// `(e_i, e_j)` in `Z`-coordinates.
    pair_z: Vec<Vec<Scalar>>,
}

impl<'a> Assembler<'a> {
    fn new(alg: &'a LeibnizAlgebra, sym: &'a TruncatedSymmetricAlgebra) -> Self {
        let z_space = alg.left_center();
        let z_basis = z_space.basis_vectors();
        let d = alg.dim;
        let mut pair_z = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let p = alg.sym_pairing(&unit(d, i), &unit(d, j));
                pair_z.push(z_coords(&z_space, &p));
            }
        }
        Assembler {
            alg,
            sym,
            z_space,
            z_basis,
            pair_z,
        }
    }

    fn dim_l(&self) -> usize {
        self.sym.dim() * self.alg.dim
    }

    fn idx(&self, mono: usize, i: usize) -> usize {
        mono * self.alg.dim + i
    }

    /// `⟨(m1, e_i), (m2, e_j)⟩ ∈ R`: `z^{m1+m2} · (e_i, e_j)` with the
    /// center coordinates bumped one degree.
    fn pairing_entry(&self, m1: usize, i: usize, m2: usize, j: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.sym.dim()];
        let Some(m12) = self.sym.mul_monomial(m1, m2) else {
            return out;
        };
        for (g, c) in self.pair_z[i * self.alg.dim + j].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if let Some(gm) = self.sym.gen_index(g) {
                if let Some(target) = self.sym.mul_monomial(m12, gm) {
                    out[target] = &out[target] + c;
                }
            }
        }
        out
    }

    /// `∂(z^A)` as a vector in the crossed module.
    fn partial_entry(&self, a: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim_l()];
        for (mono, g, mult) in self.sym.partial_monomial(a) {
            let m = Scalar::from_int(mult);
            for (i, c) in self.z_basis[g].iter().enumerate() {
                out[self.idx(mono, i)].add_mul_assign(&m, c);
            }
        }
        out
    }

    /// Scale a crossed vector by the monomial `a` (with truncation).
    fn scale_mono(&self, a: usize, x: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim_l()];
        for (p, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (m, i) = (p / self.alg.dim, p % self.alg.dim);
            if let Some(m2) = self.sym.mul_monomial(a, m) {
                out[self.idx(m2, i)] = &out[self.idx(m2, i)] + c;
            }
        }
        out
    }

    /// Scale a crossed vector by an `R`-coordinate vector.
    fn scale_r(&self, f: &[Scalar], x: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim_l()];
        for (a, fa) in f.iter().enumerate() {
            if fa.is_zero() {
                continue;
            }
            let t = self.scale_mono(a, x);
            for (p, c) in t.iter().enumerate() {
                out[p].add_mul_assign(fa, c);
            }
        }
        out
    }

    /// The crossed-product bracket on basis elements.
    fn bracket_entry(&self, m1: usize, i: usize, m2: usize, j: usize) -> Vec<Scalar> {
        let dim = self.alg.dim;
        let mut out = vec![Scalar::zero(); self.dim_l()];
        // f1 f2 (e_i ∘ e_j)
        if let Some(m12) = self.sym.mul_monomial(m1, m2) {
            for (k, c) in self.alg.bracket_basis(i, j).iter().enumerate() {
                out[self.idx(m12, k)] = &out[self.idx(m12, k)] + c;
            }
        }
        // ⟨e_i, e_j⟩ f2 ∂f1 : the pairing is the degree-1 image of (e_i,e_j).
        {
            let pf1 = self.partial_entry(m1);
            let mut coeff = vec![Scalar::zero(); self.sym.dim()];
            for (g, c) in self.pair_z[i * dim + j].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if let Some(gm) = self.sym.gen_index(g) {
                    if let Some(t) = self.sym.mul_monomial(gm, m2) {
                        coeff[t] = &coeff[t] + c;
                    }
                }
            }
            let term = self.scale_r(&coeff, &pf1);
            for (p, c) in term.iter().enumerate() {
                out[p] += c;
            }
        }
        // ⟨e_i, ∂f2⟩ f1 e_j  −  ⟨e_j, ∂f1⟩ f2 e_i
        let anchor_term = |mono_f: usize, e_pair: usize, mono_other: usize, e_other: usize, sign: i64| {
            // ⟨e_pair, ∂ z^{mono_f}⟩ = Σ_g mult · z^{mono_f − g} (e_pair, z_g)
            let mut coeff = vec![Scalar::zero(); self.sym.dim()];
            for (mono, g, mult) in self.sym.partial_monomial(mono_f) {
                // (e_pair, z_g) in Z-coords, one degree up.
                let zg = &self.z_basis[g];
                let p = self.alg.sym_pairing(&unit(dim, e_pair), zg);
                let zc = z_coords(&self.z_space, &p);
                for (g2, c) in zc.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if let Some(g2m) = self.sym.gen_index(g2) {
                        if let Some(t) = self.sym.mul_monomial(mono, g2m) {
                            coeff[t] = &coeff[t] + &(c * &Scalar::from_int(mult));
                        }
                    }
                }
            }
            let mut x = vec![Scalar::zero(); self.dim_l()];
            x[self.idx(mono_other, e_other)] = Scalar::from_int(sign);
            self.scale_r(&coeff, &x)
        };
        for (p, c) in anchor_term(m2, i, m1, j, 1).iter().enumerate() {
            out[p] += c;
        }
        for (p, c) in anchor_term(m1, j, m2, i, -1).iter().enumerate() {
            out[p] += c;
        }
        out
    }
}

/// Coordinates of a vector of the left center over its echelon basis.
fn z_coords(z: &Subspace, v: &[Scalar]) -> Vec<Scalar> {
    let basis = z.basis();
    let mut residual = v.to_vec();
    let mut coords = Vec::with_capacity(basis.rows());
    for m in 0..basis.rows() {
        let pivot = (0..z.ambient_dim())
            .find(|&j| !basis.get(m, j).is_zero())
            .expect("echelon basis rows nonzero");
        let c = residual[pivot].clone();
        if !c.is_zero() {
            for j in 0..z.ambient_dim() {
                let t = &residual[j] - &(&c * basis.get(m, j));
                residual[j] = t;
            }
        }
        coords.push(c);
    }
    assert!(
        residual.iter().all(Scalar::is_zero),
        "pairing value must lie in the left center"
    );
    coords
}

/// Build the truncated crossed product of a validated `(L, H, V)` triple.
pub fn crossed_product(
    alg: &LeibnizAlgebra,
    h: &Subspace,
    rep: &LeftRepresentation,
    n_trunc: usize,
) -> Result<CrossedProduct, InvalidStructure> {
    for (label, report) in [
        ("not a Leibniz algebra", alg.validate()),
        ("invalid isotropic ideal", alg.validate_h_ideal(h)),
        ("invalid H-representation", rep.validate(alg, h)),
    ] {
        if !report.is_valid() {
            return Err(InvalidStructure::new(label, report));
        }
    }
    let z_space = alg.left_center();
    let sym = TruncatedSymmetricAlgebra::new(z_space.dim(), n_trunc);
    let asm = Assembler::new(alg, &sym);
    let dim_l = asm.dim_l();
    let dim_r = sym.dim();
    let dim = alg.dim;

    let mut bracket = vec![Scalar::zero(); dim_l * dim_l * dim_l];
    let mut pairing = vec![Scalar::zero(); dim_l * dim_l * dim_r];
    for p in 0..dim_l {
        let (m1, i) = (p / dim, p % dim);
        for q in 0..dim_l {
            let (m2, j) = (q / dim, q % dim);
            let b = asm.bracket_entry(m1, i, m2, j);
            for (k, c) in b.into_iter().enumerate() {
                if !c.is_zero() {
                    bracket[(p * dim_l + q) * dim_l + k] = c;
                }
            }
            let g = asm.pairing_entry(m1, i, m2, j);
            for (a, c) in g.into_iter().enumerate() {
                if !c.is_zero() {
                    pairing[(p * dim_l + q) * dim_r + a] = c;
                }
            }
        }
    }
    let mut partial = Matrix::zeros(dim_l, dim_r);
    for a in 0..dim_r {
        for (p, c) in asm.partial_entry(a).into_iter().enumerate() {
            if !c.is_zero() {
                partial.set(p, a, c);
            }
        }
    }
    let module_action: Vec<Matrix> = (0..dim_r)
        .map(|a| {
            let mut m = Matrix::zeros(dim_l, dim_l);
            for p in 0..dim_l {
                let (mo, i) = (p / dim, p % dim);
                if let Some(mo2) = sym.mul_monomial(a, mo) {
                    m.set(asm.idx(mo2, i), p, Scalar::one());
                }
            }
            m
        })
        .collect();

    let guard = DegreeGuard {
        max_degree: n_trunc,
        e_degrees: (0..dim_l).map(|p| sym.degree(p / dim)).collect(),
        r_degrees: (0..dim_r).map(|a| sym.degree(a)).collect(),
        v_degrees: (0..dim_r * rep.dim_v).map(|p| sym.degree(p / rep.dim_v)).collect(),
    };
    let cd = CourantDorfmanAlgebra {
        r: sym.algebra(),
        dim_e: dim_l,
        module_action,
        pairing,
        partial,
        bracket,
        guard: Some(guard),
    };

    // Induced H = S(Z)⊗H and representation on V = S(Z)⊗V (monomial-major).
    let dим_v = dim_r * rep.dim_v;
    let h_vecs: Vec<Vec<Scalar>> = (0..dim_r)
        .flat_map(|m| {
            h.basis_vectors().into_iter().map(move |hb| (m, hb))
        })
        .map(|(m, hb)| {
            let mut v = vec![Scalar::zero(); dim_l];
            for (i, c) in hb.iter().enumerate() {
                v[m * dim + i] = c.clone();
            }
            v
        })
        .collect();
    let big_h = Subspace::from_vectors(dim_l, h_vecs);

    // ∇_{(m1, e_i)} (z^{m2} ⊗ w) = z^{m1}(⟨e_i, ∂z^{m2}⟩ w + z^{m2} τ(e_i) w)
    let dv = rep.dim_v;
    let nabla: Vec<Matrix> = (0..dim_l)
        .map(|p| {
            let (m1, i) = (p / dim, p % dim);
            let mut out = Matrix::zeros(dим_v, dим_v);
            for m2 in 0..dim_r {
                // anchor part: Σ over ∂z^{m2} pieces
                for (mono, g, mult) in sym.partial_monomial(m2) {
                    let pz = alg.sym_pairing(&unit(dim, i), &asm.z_basis[g]);
                    let zc = z_coords(&asm.z_space, &pz);
                    for (g2, c) in zc.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let Some(g2m) = sym.gen_index(g2) else { continue };
                        let Some(t1) = sym.mul_monomial(mono, g2m) else { continue };
                        let Some(t2) = sym.mul_monomial(m1, t1) else { continue };
                        let coeff = c * &Scalar::from_int(mult);
                        for w in 0..dv {
                            let cur = out.get(t2 * dv + w, m2 * dv + w) + &coeff;
                            out.set(t2 * dv + w, m2 * dv + w, cur);
                        }
                    }
                }
                // τ part
                if let Some(t) = sym.mul_monomial(m1, m2) {
                    for w in 0..dv {
                        for w2 in 0..dv {
                            let c = rep.action[i].get(w, w2);
                            if !c.is_zero() {
                                let cur = out.get(t * dv + w, m2 * dv + w2) + c;
                                out.set(t * dv + w, m2 * dv + w2, cur);
                            }
                        }
                    }
                }
            }
            out
        })
        .collect();
    let act_v: Vec<Matrix> = (0..dim_r)
        .map(|a| {
            let mut m = Matrix::zeros(dим_v, dим_v);
            for m2 in 0..dim_r {
                if let Some(t) = sym.mul_monomial(a, m2) {
                    for w in 0..dv {
                        m.set(t * dv + w, m2 * dv + w, Scalar::one());
                    }
                }
            }
            m
        })
        .collect();
    let hdata = CdHData {
        h: big_h,
        dim_v: dим_v,
        nabla,
        act_v,
    };

    // Guarded validation: all run checks must pass.
    let mut report = cd.validate();
    report.merge(cd.validate_h_ideal(&hdata.h));
    report.merge(hdata.validate(&cd));
    if !report.is_valid() {
        return Err(InvalidStructure::new(
            "crossed product failed guarded validation",
            report,
        ));
    }
    Ok(CrossedProduct {
        base: alg.clone(),
        base_h: h.clone(),
        base_rep: rep.clone(),
        z_basis: asm.z_basis,
        sym,
        cd,
        hdata,
        guard_degree: n_trunc.saturating_sub(1),
        report,
    })
}

impl CrossedProduct {
    /// The complex context of the crossed product.
    pub fn context(&self) -> Result<HContext, InvalidStructure> {
        HContext::courant_dorfman(&self.cd, &self.hdata)
    }

    /// The base Leibniz context with coefficients `S(Z) ⊗ V` (the
    /// restriction of `∇` to `1 ⊗ L`).
    pub fn base_context_big_v(&self) -> Result<HContext, InvalidStructure> {
        let rep = LeftRepresentation {
            dim_v: self.hdata.dim_v,
            action: (0..self.base.dim).map(|i| self.hdata.nabla[i].clone()).collect(),
        };
        HContext::leibniz(&self.base, &self.base_h, &rep)
    }

    /// Total polynomial degree of an ambient basis index.
    pub fn e_degree(&self, p: usize) -> usize {
        self.sym.degree(p / self.base.dim)
    }

    /// Restriction `ψ`: read a crossed cochain on `1⊗L` arguments and
    /// `1⊗H` slots.
    pub fn restrict_psi(
        &self,
        big_layout: &Layout,
        base_layout: &Layout,
        omega: &[Scalar],
    ) -> Vec<Scalar> {
        let dim = self.base.dim;
        let dv = self.hdata.dim_v;
        let mut out = vec![Scalar::zero(); base_layout.total];
        for comp in &base_layout.comps {
            for ti in 0..comp.n_tuples {
                let t = base_layout.decode_tuple(comp.k, ti);
                // 1⊗e_i sits at crossed index i (monomial 0 is index 0);
                // likewise 1⊗h_r is the crossed H-basis element r.
                let big_t: Vec<u8> = t.clone();
                let _ = dim;
                for ms in &comp.msets {
                    for v in 0..dv {
                        out[base_layout.index(comp.k, &t, ms, v)] =
                            omega[big_layout.index(comp.k, &big_t, ms, v)].clone();
                    }
                }
            }
        }
        out
    }
}

/// Lazy extension `φ` of a base cochain (coefficients `S(Z)⊗V`) to the
/// crossed-product context: `S(Z)`-linear in the `H`-slots, and extended
/// argument by argument (first scaled argument) through weak
/// `R`-linearity. Values are memoized per coordinate block.
pub struct PhiEvaluator<'a> {
    pub cp: &'a CrossedProduct,
    base_layout: &'a Layout,
    base_data: &'a [Scalar],
    memo: RefCell<HashMap<(usize, Vec<u8>, Vec<u8>), Rc<Vec<Scalar>>>>,
}

impl<'a> PhiEvaluator<'a> {
    pub fn new(cp: &'a CrossedProduct, base_layout: &'a Layout, base_data: &'a [Scalar]) -> Self {
        PhiEvaluator {
            cp,
            base_layout,
            base_data,
            memo: RefCell::new(HashMap::new()),
        }
    }

    fn act_mono(&self, mono: usize, value: &[Scalar]) -> Vec<Scalar> {
        let dv = self.cp.base_rep.dim_v;
        let mut out = vec![Scalar::zero(); value.len()];
        for (p, c) in value.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (m2, w) = (p / dv, p % dv);
            if let Some(t) = self.cp.sym.mul_monomial(mono, m2) {
                out[t * dv + w] = &out[t * dv + w] + c;
            }
        }
        out
    }

    fn act_r(&self, f: &[Scalar], value: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); value.len()];
        for (a, fa) in f.iter().enumerate() {
            if fa.is_zero() {
                continue;
            }
            let t = self.act_mono(a, value);
            for (p, c) in t.iter().enumerate() {
                out[p].add_mul_assign(fa, c);
            }
        }
        out
    }

    /// The `V`-block of `(φω)_k(t; ms)` for crossed indices.
    pub fn value(&self, k: usize, t: &[u8], ms: &[u8]) -> Rc<Vec<Scalar>> {
        if let Some(hit) = self.memo.borrow().get(&(k, t.to_vec(), ms.to_vec())) {
            return hit.clone();
        }
        let result = self.compute(k, t, ms);
        let rc = Rc::new(result);
        self.memo
            .borrow_mut()
            .insert((k, t.to_vec(), ms.to_vec()), rc.clone());
        rc
    }

    fn compute(&self, k: usize, t: &[u8], ms: &[u8]) -> Vec<Scalar> {
        let dim = self.cp.base.dim;
        let dv = self.cp.hdata.dim_v;
        let dh_base = self.cp.base_h.dim();
        // First argument carrying a nonzero monomial, if any.
        let split_pos = t.iter().position(|&p| (p as usize) / dim != 0);
        match split_pos {
            None => {
                // Base case: arguments in 1⊗L; slots (m_q, r_q) are handled
                // by S(Z)-linearity in one step.
                let mut mono_product = Some(0usize); // unit monomial
                let mut base_ms: Vec<u8> = Vec::with_capacity(ms.len());
                for &s in ms {
                    let (m_q, r_q) = ((s as usize) / dh_base, (s as usize) % dh_base);
                    base_ms.push(r_q as u8);
                    mono_product =
                        mono_product.and_then(|acc| self.cp.sym.mul_monomial(acc, m_q));
                }
                base_ms.sort_unstable();
                let Some(mono) = mono_product else {
                    return vec![Scalar::zero(); dv];
                };
                let base_t: Vec<u8> = t.to_vec();
                let raw: Vec<Scalar> = (0..dv)
                    .map(|v| {
                        self.base_data[self.base_layout.index(k, &base_t, &base_ms, v)].clone()
                    })
                    .collect();
                self.act_mono(mono, &raw)
            }
            Some(a) => {
                // (φω)_k(e₁.., z^F e_a, x_{a+1}..) =
                //   z^F (φω)_k(.., e_a, ..)
                //   + Σ_{b>a} (−1)^{b−a} ⟨e_a, x_b⟩ (φω)_{k+1}(.. ê_a .. x̂_b ..; ∂z^F, ..)
                let p = t[a] as usize;
                let (mono_f, e_a) = (p / dim, p % dim);
                let mut stripped = t.to_vec();
                stripped[a] = e_a as u8;
                let head = self.value(k, &stripped, ms);
                let mut out = self.act_mono(mono_f, &head);
                for b in a + 1..t.len() {
                    let sign = (b - a) % 2 == 0;
                    // ⟨(0, e_a), x_b⟩ ∈ R
                    let pairing =
                        self.cp.cd.pairing_basis(e_a, t[b] as usize).to_vec();
                    if pairing.iter().all(Scalar::is_zero) {
                        continue;
                    }
                    let rest: Vec<u8> = t
                        .iter()
                        .enumerate()
                        .filter(|(q, _)| *q != a && *q != b)
                        .map(|(_, &x)| x)
                        .collect();
                    // ∂ z^F in crossed H-coordinates (m, r).
                    for (mono, g, mult) in self.cp.sym.partial_monomial(mono_f) {
                        let zc = crate::context::h_coords_of(&self.cp.base_h, &self.cp.z_basis[g])
                            .expect("Z ⊆ H");
                        for (r, c) in zc.iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            let slot = (mono * dh_base + r) as u8;
                            let sub = self.value(k + 1, &rest, &insert_sorted(ms, slot));
                            let scaled = self.act_r(&pairing, &sub);
                            let coeff = c * &Scalar::from_int(mult);
                            let coeff = if sign { coeff } else { -coeff };
                            for (q, val) in scaled.iter().enumerate() {
                                out[q].add_mul_assign(&coeff, val);
                            }
                        }
                    }
                }
                out
            }
        }
    }

    /// Materialize the whole extension as a raw crossed-context cochain.
    pub fn materialize(&self, big_layout: &Layout) -> Vec<Scalar> {
        let dv = self.cp.hdata.dim_v;
        let mut out = vec![Scalar::zero(); big_layout.total];
        for comp in &big_layout.comps {
            for ti in 0..comp.n_tuples {
                let t = big_layout.decode_tuple(comp.k, ti);
                for ms in &comp.msets {
                    let val = self.value(comp.k, &t, ms);
                    for v in 0..dv {
                        out[big_layout.index(comp.k, &t, ms, v)] = val[v].clone();
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn monomial_enumeration() {
        let sym = TruncatedSymmetricAlgebra::new(2, 2);
        assert_eq!(sym.dim(), 6); // 1, z1, z2, z1², z1z2, z2²
        assert_eq!(sym.degree(0), 0);
        assert!(sym.mul_monomial(3, 3).is_none()); // degree 4 > 2
        let alg = sym.algebra();
        assert!(alg.validate().is_valid());
    }

    #[test]
    fn dim2_crossed_n2_shape() {
        let cp = crossed_product(
            &fixtures::dim2_leibniz(),
            &fixtures::dim2_h(),
            &fixtures::dim2_rep(),
            2,
        )
        .unwrap();
        assert_eq!(cp.cd.dim_e, 6);
        assert_eq!(cp.hdata.h.dim(), 3);
        assert_eq!(cp.hdata.dim_v, 3);
        assert!(cp.report.is_valid());
        assert!(cp.report.skipped > 0, "truncation must skip some checks");
        // ∂(z²) = 2 z ⊗ e₂: monomials are 1, z, z²; basis (m,i) = 2m + i.
        let pz2 = cp.cd.partial_vec(&unit(3, 2));
        let mut expect = vec![s(0); 6];
        expect[1 * 2 + 1] = s(2);
        assert_eq!(pz2, expect);
    }

    #[test]
    fn n0_embeds_the_base_algebra() {
        let cp = crossed_product(
            &fixtures::dim2_leibniz(),
            &fixtures::dim2_h(),
            &fixtures::dim2_rep(),
            0,
        )
        .unwrap();
        assert_eq!(cp.cd.dim_e, 2);
        // bracket reduces to the Leibniz bracket; pairing truncates to 0.
        assert_eq!(cp.cd.bracket_basis(0, 0), fixtures::dim2_leibniz().bracket_basis(0, 0));
        assert!(cp.cd.pairing.iter().all(Scalar::is_zero));
        assert!(cp.cd.partial.is_zero());
    }

    #[test]
    fn omni_crossed_anchor_is_degree_operator() {
        // ρ(1⊗A)(z^k) = k z^k for the omni-Lie crossed product.
        let cp = crossed_product(
            &fixtures::omni_lie(1),
            &fixtures::omni_lie_h(1),
            &fixtures::omni_lie_rep(1),
            2,
        )
        .unwrap();
        // basis of L: e0 = A, e1 = v. Monomials: 1, z, z².
        let a_vec = unit(6, 0); // (mono 0, A)
        for k in 0..=2usize {
            let f = unit(3, k); // z^k
            let out = cp.cd.anchor(&a_vec, &f);
            let mut expect = vec![s(0); 3];
            expect[k] = s(k as i64);
            assert_eq!(out, expect, "z^{k}");
        }
    }

    #[test]
    fn induced_nabla_examples() {
        // dim-2 fixture: ∇_{1⊗e0}(z·v) = ⟨e0, ∂z⟩ v = (e0,e1) v = 0.
        let cp = crossed_product(
            &fixtures::dim2_leibniz(),
            &fixtures::dim2_h(),
            &fixtures::dim2_rep(),
            2,
        )
        .unwrap();
        let zv = unit(3, 1); // V-basis (mono z, w0): index 1·1 + 0
        assert!(cp.hdata.nabla[0].mul_vec(&zv).iter().all(Scalar::is_zero));

        // omni-lie: ∇_{1⊗A}(z·v) = z v + z τ(A)v = 2 z v.
        let cp = crossed_product(
            &fixtures::omni_lie(1),
            &fixtures::omni_lie_h(1),
            &fixtures::omni_lie_rep(1),
            2,
        )
        .unwrap();
        let out = cp.hdata.nabla[0].mul_vec(&unit(3, 1));
        let mut expect = vec![s(0); 3];
        expect[1] = s(2);
        assert_eq!(out, expect);
    }

    #[test]
    fn nabla_trivial_on_induced_h() {
        for n in [0usize, 1, 2] {
            let cp = crossed_product(
                &fixtures::dim2_leibniz(),
                &fixtures::dim2_h(),
                &fixtures::dim2_rep(),
                n,
            )
            .unwrap();
            for hv in cp.hdata.h.basis_vectors() {
                assert!(cp.hdata.nabla_vec(&hv).is_zero());
            }
        }
    }
}
