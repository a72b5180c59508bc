//! Finite-dimensional Courant-Dorfman algebras as basis tensors.
//!
//! A Courant-Dorfman algebra here is a commutative algebra `R`, a module
//! `E` with an `R`-action, a symmetric `R`-valued pairing, a derivation
//! `∂ : R → E` and a Dorfman bracket, all stored on explicit bases over the
//! base field. Degree-truncated structures (crossed products) carry a
//! polynomial grading and a degree guard: checks whose identity can lose
//! information to truncation are only run where the truncation provably
//! cannot bite, and skipped tuples are counted rather than reported as
//! failures.

use crate::matrix::{Matrix, Subspace};
use crate::report::ValidationReport;
use crate::scalar::Scalar;

/// A finite-dimensional commutative associative unital algebra.
#[derive(Clone, Debug)]
pub struct CommutativeAlgebra {
    pub dim_r: usize,
    /// `f_a · f_b = Σ_c mult[(a*dim_r + b)*dim_r + c] f_c`.
    pub mult: Vec<Scalar>,
    pub unit: Vec<Scalar>,
}

impl CommutativeAlgebra {
    /// The base field itself.
    pub fn base_field() -> Self {
        CommutativeAlgebra {
            dim_r: 1,
            mult: vec![Scalar::one()],
            unit: vec![Scalar::one()],
        }
    }

    pub fn mult_basis(&self, a: usize, b: usize) -> &[Scalar] {
        let d = self.dim_r;
        &self.mult[(a * d + b) * d..(a * d + b + 1) * d]
    }

    /// Product of coordinate vectors.
    pub fn mul_vec(&self, f: &[Scalar], g: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim_r];
        for (a, fa) in f.iter().enumerate() {
            if fa.is_zero() {
                continue;
            }
            for (b, gb) in g.iter().enumerate() {
                if gb.is_zero() {
                    continue;
                }
                let c = fa * gb;
                for (k, m) in self.mult_basis(a, b).iter().enumerate() {
                    out[k].add_mul_assign(&c, m);
                }
            }
        }
        out
    }

    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::new();
        let d = self.dim_r;
        let unit_vec = self.unit.clone();
        for a in 0..d {
            let fa = crate::leibniz::unit(d, a);
            let left = self.mul_vec(&unit_vec, &fa);
            rep.record(left == fa, "unit acts as identity", || format!("f{a}"));
            for b in 0..d {
                let fb = crate::leibniz::unit(d, b);
                let ab = self.mul_vec(&fa, &fb);
                let ba = self.mul_vec(&fb, &fa);
                rep.record(ab == ba, "commutativity", || format!("(f{a}, f{b})"));
                for c in 0..d {
                    let fc = crate::leibniz::unit(d, c);
                    let lhs = self.mul_vec(&ab, &fc);
                    let rhs = self.mul_vec(&fa, &self.mul_vec(&fb, &fc));
                    rep.record(lhs == rhs, "associativity", || format!("(f{a}, f{b}, f{c})"));
                }
            }
        }
        rep
    }
}

/// Polynomial-degree guard for truncated structures.
#[derive(Clone, Debug)]
pub struct DegreeGuard {
    /// Truncation order `N`: monomial degrees above `N` are zero.
    pub max_degree: usize,
    /// Degree of each `E`-basis element.
    pub e_degrees: Vec<usize>,
    /// Degree of each `R`-basis element.
    pub r_degrees: Vec<usize>,
    /// Degree of each coefficient-module basis element (used when an
    /// extension absorbs `V` into the ambient space).
    pub v_degrees: Vec<usize>,
}

impl DegreeGuard {
    /// Whether a check with the given input degree and headroom runs.
    /// `headroom = 1` marks identities that apply `∂` to a computed value
    /// (axiom (2), (3), the derivation rule): truncation can resurrect
    /// discarded content there, so they need one spare degree.
    fn admits(&self, total: usize, headroom: usize) -> bool {
        total + headroom <= self.max_degree
    }
}

/// Courant-Dorfman algebra on explicit bases.
#[derive(Clone, Debug)]
pub struct CourantDorfmanAlgebra {
    pub r: CommutativeAlgebra,
    pub dim_e: usize,
    /// One `dim_e × dim_e` matrix per `R`-basis element; column `j` of
    /// `module_action[a]` is `f_a · e_j`.
    pub module_action: Vec<Matrix>,
    /// `⟨e_i, e_j⟩ = Σ_a pairing[(i*dim_e + j)*dim_r + a] f_a`.
    pub pairing: Vec<Scalar>,
    /// `∂ : R → E`; column `a` is `∂ f_a`.
    pub partial: Matrix,
    /// Dorfman bracket tensor, layout as in `LeibnizAlgebra`.
    pub bracket: Vec<Scalar>,
    /// Present for degree-truncated structures.
    pub guard: Option<DegreeGuard>,
}

impl CourantDorfmanAlgebra {
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

    pub fn pairing_basis(&self, i: usize, j: usize) -> &[Scalar] {
        let d = self.r.dim_r;
        &self.pairing[(i * self.dim_e + j) * d..(i * self.dim_e + j + 1) * d]
    }

    /// `⟨x, y⟩ ∈ R` for coordinate vectors.
    pub fn pairing_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.r.dim_r];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (a, g) in self.pairing_basis(i, j).iter().enumerate() {
                    out[a].add_mul_assign(&c, g);
                }
            }
        }
        out
    }

    /// `f · x` for `f ∈ R`, `x ∈ E`.
    pub fn act_vec(&self, f: &[Scalar], x: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim_e];
        for (a, fa) in f.iter().enumerate() {
            if fa.is_zero() {
                continue;
            }
            let ax = self.module_action[a].mul_vec(x);
            for (k, v) in ax.iter().enumerate() {
                out[k].add_mul_assign(fa, v);
            }
        }
        out
    }

    /// `∂ f` for a coordinate vector `f ∈ R`.
    pub fn partial_vec(&self, f: &[Scalar]) -> Vec<Scalar> {
        self.partial.mul_vec(f)
    }

    /// The anchor `ρ(x)·f = ⟨x, ∂f⟩`.
    pub fn anchor(&self, x: &[Scalar], f: &[Scalar]) -> Vec<Scalar> {
        self.pairing_vec(x, &self.partial_vec(f))
    }

    pub fn e_degree(&self, i: usize) -> usize {
        self.guard.as_ref().map_or(0, |g| g.e_degrees[i])
    }

    pub fn r_degree(&self, a: usize) -> usize {
        self.guard.as_ref().map_or(0, |g| g.r_degrees[a])
    }

    fn admits(&self, total: usize, headroom: usize) -> bool {
        self.guard.as_ref().map_or(true, |g| g.admits(total, headroom))
    }

    /// Full structural validation: module axioms, derivation rule, pairing
    /// symmetry and bilinearity, and the six Dorfman axioms, all on basis
    /// tuples (guarded where truncation could bite).
    pub fn validate(&self) -> ValidationReport {
        let mut rep = self.r.validate();
        let de = self.dim_e;
        let dr = self.r.dim_r;
        let e = |i: usize| crate::leibniz::unit(de, i);
        let f = |a: usize| crate::leibniz::unit(dr, a);

        // Unital action.
        let mut unit_act = Matrix::zeros(de, de);
        for (a, ua) in self.r.unit.iter().enumerate() {
            if !ua.is_zero() {
                unit_act = unit_act.add(&self.module_action[a].scale(ua));
            }
        }
        rep.record(unit_act == Matrix::identity(de), "module action is unital", || {
            String::from("unit")
        });

        // Action is an algebra homomorphism: act(f_a)∘act(f_b) = act(f_a f_b).
        for a in 0..dr {
            for b in 0..dr {
                let composed = self.module_action[a].matmul(&self.module_action[b]);
                let mut direct = Matrix::zeros(de, de);
                for (c, m) in self.r.mult_basis(a, b).iter().enumerate() {
                    if !m.is_zero() {
                        direct = direct.add(&self.module_action[c].scale(m));
                    }
                }
                rep.record(composed == direct, "module action homomorphism", || {
                    format!("(f{a}, f{b})")
                });
            }
        }

        // ∂ is a derivation: ∂(f g) = f ∂g + g ∂f. Applies ∂ to a computed
        // product, hence headroom 1 under a guard.
        for a in 0..dr {
            for b in 0..dr {
                if !self.admits(self.r_degree(a) + self.r_degree(b), 1) {
                    rep.skip();
                    continue;
                }
                let lhs = self.partial_vec(&self.r.mul_vec(&f(a), &f(b)));
                let mut rhs = self.act_vec(&f(a), &self.partial_vec(&f(b)));
                let extra = self.act_vec(&f(b), &self.partial_vec(&f(a)));
                for (u, v) in rhs.iter_mut().zip(&extra) {
                    *u += v;
                }
                rep.record(lhs == rhs, "∂ derivation rule", || format!("(f{a}, f{b})"));
            }
        }

        // Pairing symmetry and R-bilinearity.
        for i in 0..de {
            for j in 0..de {
                rep.record(
                    self.pairing_basis(i, j) == self.pairing_basis(j, i),
                    "pairing symmetry",
                    || format!("(e{i}, e{j})"),
                );
                for a in 0..dr {
                    let lhs = self.pairing_vec(&self.act_vec(&f(a), &e(i)), &e(j));
                    let rhs = self.r.mul_vec(&f(a), &self.pairing_vec(&e(i), &e(j)));
                    rep.record(lhs == rhs, "pairing R-bilinearity", || {
                        format!("(f{a} e{i}, e{j})")
                    });
                }
            }
        }

        // Axiom (1): e_i ∘ (f_a e_j) = f_a (e_i ∘ e_j) + ⟨e_i, ∂f_a⟩ e_j.
        for i in 0..de {
            for a in 0..dr {
                for j in 0..de {
                    let lhs = self.bracket_vec(&e(i), &self.act_vec(&f(a), &e(j)));
                    let mut rhs = self.act_vec(&f(a), &self.bracket_vec(&e(i), &e(j)));
                    let anchor = self.anchor(&e(i), &f(a));
                    let extra = self.act_vec(&anchor, &e(j));
                    for (u, v) in rhs.iter_mut().zip(&extra) {
                        *u += v;
                    }
                    rep.record(lhs == rhs, "axiom (1)", || format!("(e{i}, f{a}, e{j})"));
                }
            }
        }

        // Axiom (2): ⟨e_i, ∂⟨e_j, e_k⟩⟩ = ⟨e_i∘e_j, e_k⟩ + ⟨e_j, e_i∘e_k⟩.
        for i in 0..de {
            for j in 0..de {
                for k in 0..de {
                    let t = self.e_degree(i) + self.e_degree(j) + self.e_degree(k);
                    if !self.admits(t, 1) {
                        rep.skip();
                        continue;
                    }
                    let lhs =
                        self.pairing_vec(&e(i), &self.partial_vec(&self.pairing_vec(&e(j), &e(k))));
                    let mut rhs = self.pairing_vec(&self.bracket_vec(&e(i), &e(j)), &e(k));
                    let extra = self.pairing_vec(&e(j), &self.bracket_vec(&e(i), &e(k)));
                    for (u, v) in rhs.iter_mut().zip(&extra) {
                        *u += v;
                    }
                    rep.record(lhs == rhs, "axiom (2)", || format!("(e{i}, e{j}, e{k})"));
                }
            }
        }

        // Axiom (3): e_i∘e_j + e_j∘e_i = ∂⟨e_i, e_j⟩.
        for i in 0..de {
            for j in 0..=i {
                let t = self.e_degree(i) + self.e_degree(j);
                if !self.admits(t, 1) {
                    rep.skip();
                    continue;
                }
                let mut lhs = self.bracket_vec(&e(i), &e(j));
                let other = self.bracket_vec(&e(j), &e(i));
                for (u, v) in lhs.iter_mut().zip(&other) {
                    *u += v;
                }
                let rhs = self.partial_vec(&self.pairing_vec(&e(i), &e(j)));
                rep.record(lhs == rhs, "axiom (3)", || format!("(e{i}, e{j})"));
            }
        }

        // Axiom (4): the Leibniz identity for the Dorfman bracket.
        for i in 0..de {
            for j in 0..de {
                for k in 0..de {
                    let lhs = self.bracket_vec(&e(i), &self.bracket_vec(&e(j), &e(k)));
                    let mut rhs = self.bracket_vec(&self.bracket_vec(&e(i), &e(j)), &e(k));
                    let extra = self.bracket_vec(&e(j), &self.bracket_vec(&e(i), &e(k)));
                    for (u, v) in rhs.iter_mut().zip(&extra) {
                        *u += v;
                    }
                    rep.record(lhs == rhs, "axiom (4)", || format!("(e{i}, e{j}, e{k})"));
                }
            }
        }

        // Axiom (5): ∂f ∘ e = 0.
        for a in 0..dr {
            for j in 0..de {
                let out = self.bracket_vec(&self.partial_vec(&f(a)), &e(j));
                rep.record(out.iter().all(Scalar::is_zero), "axiom (5)", || {
                    format!("(∂f{a}, e{j})")
                });
            }
        }

        // Axiom (6): ⟨∂f, ∂g⟩ = 0.
        for a in 0..dr {
            for b in 0..=a {
                let out = self.pairing_vec(&self.partial_vec(&f(a)), &self.partial_vec(&f(b)));
                rep.record(out.iter().all(Scalar::is_zero), "axiom (6)", || {
                    format!("(∂f{a}, ∂f{b})")
                });
            }
        }
        rep
    }

    /// Checks for an isotropic ideal: `R`-submodule closure, `∂R ⊆ H`,
    /// isotropy and two-sidedness under the Dorfman bracket.
    pub fn validate_h_ideal(&self, h: &Subspace) -> ValidationReport {
        let mut rep = ValidationReport::new();
        assert_eq!(h.ambient_dim(), self.dim_e, "ambient mismatch");
        let hb = h.basis_vectors();
        for (x, hx) in hb.iter().enumerate() {
            for a in 0..self.r.dim_r {
                let fa = crate::leibniz::unit(self.r.dim_r, a);
                rep.record(
                    h.contains_vec(&self.act_vec(&fa, hx)),
                    "H is an R-submodule",
                    || format!("f{a} · h{x}"),
                );
            }
        }
        for a in 0..self.r.dim_r {
            let fa = crate::leibniz::unit(self.r.dim_r, a);
            rep.record(h.contains_vec(&self.partial_vec(&fa)), "∂R ⊆ H", || {
                format!("∂f{a}")
            });
        }
        for (x, hx) in hb.iter().enumerate() {
            for (y, hy) in hb.iter().enumerate().skip(x) {
                let p = self.pairing_vec(hx, hy);
                rep.record(p.iter().all(Scalar::is_zero), "isotropy ⟨H,H⟩ = 0", || {
                    format!("(h{x}, h{y})")
                });
            }
            for j in 0..self.dim_e {
                let ej = crate::leibniz::unit(self.dim_e, j);
                rep.record(
                    h.contains_vec(&self.bracket_vec(hx, &ej)),
                    "H ∘ E ⊆ H",
                    || format!("h{x} ∘ e{j}"),
                );
                rep.record(
                    h.contains_vec(&self.bracket_vec(&ej, hx)),
                    "E ∘ H ⊆ H",
                    || format!("e{j} ∘ h{x}"),
                );
            }
        }
        rep
    }
}

/// An `H`-trivial representation of a Courant-Dorfman algebra: an
/// `R`-module `V` with a connection `∇` killing `H`.
#[derive(Clone, Debug)]
pub struct CdHData {
    pub h: Subspace,
    pub dim_v: usize,
    /// `∇_{e_i}` on `V`.
    pub nabla: Vec<Matrix>,
    /// Action of `f_a` on `V`.
    pub act_v: Vec<Matrix>,
}

impl CdHData {
    pub fn nabla_vec(&self, x: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.dim_v, self.dim_v);
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                m = m.add(&self.nabla[i].scale(xi));
            }
        }
        m
    }

    pub fn act_v_vec(&self, fvec: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.dim_v, self.dim_v);
        for (a, fa) in fvec.iter().enumerate() {
            if !fa.is_zero() {
                m = m.add(&self.act_v[a].scale(fa));
            }
        }
        m
    }

    /// The four conditions of an `H`-representation, on basis tuples.
    pub fn validate(&self, cd: &CourantDorfmanAlgebra) -> ValidationReport {
        let mut rep = ValidationReport::new();
        let de = cd.dim_e;
        let dr = cd.r.dim_r;
        let e = |i: usize| crate::leibniz::unit(de, i);
        let f = |a: usize| crate::leibniz::unit(dr, a);

        for (x, hx) in self.h.basis_vectors().iter().enumerate() {
            rep.record(self.nabla_vec(hx).is_zero(), "∇_α = 0 on H", || format!("h{x}"));
        }
        // ∇_{f e} = f ∇_e.
        for a in 0..dr {
            for i in 0..de {
                let lhs = self.nabla_vec(&cd.act_vec(&f(a), &e(i)));
                let rhs = self.act_v[a].matmul(&self.nabla[i]);
                rep.record(lhs == rhs, "∇_{fe} = f∇_e", || format!("(f{a}, e{i})"));
            }
        }
        // ∇_e(f v) = (ρ(e)f) v + f ∇_e v.
        for i in 0..de {
            for a in 0..dr {
                let lhs = self.nabla[i].matmul(&self.act_v[a]);
                let anchor = cd.anchor(&e(i), &f(a));
                let rhs = self.act_v_vec(&anchor).add(&self.act_v[a].matmul(&self.nabla[i]));
                rep.record(lhs == rhs, "∇ Leibniz rule over R", || format!("(e{i}, f{a})"));
            }
        }
        // ∇ is a homomorphism of Leibniz algebras.
        for i in 0..de {
            for j in 0..de {
                let lhs = self.nabla_vec(&cd.bracket_vec(&e(i), &e(j)));
                let rhs = self.nabla[i]
                    .matmul(&self.nabla[j])
                    .sub(&self.nabla[j].matmul(&self.nabla[i]));
                rep.record(lhs == rhs, "∇_{x∘y} = [∇_x, ∇_y]", || format!("(e{i}, e{j})"));
            }
        }
        rep
    }
}

/// Embed a bracket with trivial scalars (`R = 𝕜`, `∂ = 0`, pairing `0`) as
/// a Courant-Dorfman algebra; valid exactly when the bracket is a Lie
/// bracket (axiom (3) forces antisymmetry).
pub fn lie_as_cd(bracket: Vec<Scalar>, dim_e: usize) -> CourantDorfmanAlgebra {
    CourantDorfmanAlgebra {
        r: CommutativeAlgebra::base_field(),
        dim_e,
        module_action: vec![Matrix::identity(dim_e)],
        pairing: vec![Scalar::zero(); dim_e * dim_e * 1],
        partial: Matrix::zeros(dim_e, 1),
        bracket,
        guard: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn heis_bracket() -> Vec<Scalar> {
        let heis = fixtures::heisenberg();
        let mut bracket = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                bracket.extend_from_slice(heis.bracket_basis(i, j));
            }
        }
        bracket
    }

    #[test]
    fn base_field_is_valid() {
        assert!(CommutativeAlgebra::base_field().validate().is_valid());
    }

    #[test]
    fn lie_algebra_embeds_as_cd() {
        let cd = lie_as_cd(heis_bracket(), 3);
        let rep = cd.validate();
        assert!(rep.is_valid(), "{rep}");
        // The anchor kills the unit for any e (derivations kill the unit).
        for i in 0..3 {
            let a = cd.anchor(&crate::leibniz::unit(3, i), &cd.r.unit.clone());
            assert!(a.iter().all(Scalar::is_zero));
        }
        // Center is a valid isotropic ideal containing ∂R = 0.
        let h = fixtures::heisenberg_h();
        assert!(cd.validate_h_ideal(&h).is_valid());
        // (R, ρ) is an H-representation (here ρ = 0, V = 𝕜).
        let hdata = CdHData {
            h,
            dim_v: 1,
            nabla: vec![Matrix::zeros(1, 1); 3],
            act_v: vec![Matrix::identity(1)],
        };
        assert!(hdata.validate(&cd).is_valid());
    }

    #[test]
    fn perturbed_axiom3_reports_witness() {
        let mut cd = lie_as_cd(heis_bracket(), 3);
        // e0∘e0 = e2 breaks axiom (3) under a zero pairing.
        cd.bracket[2] = Scalar::one();
        let rep = cd.validate();
        assert!(!rep.is_valid());
        assert!(rep.violations.iter().any(|v| v.check == "axiom (3)"));
    }
}
