//! Finite-dimensional Leibniz algebras by structure constants.
//!
//! A bracket tensor `c[i][j][k]` encodes `e_i ∘ e_j = Σ_k c[i][j][k] e_k`.
//! The module validates the Leibniz identity, computes the left center and
//! the symmetric pairing `(x, y) = x∘y + y∘x`, checks isotropic ideals and
//! `H`-trivial representations, and forms the quotient Lie algebra used by
//! the Chevalley-Eilenberg oracle.

use crate::matrix::{Matrix, Subspace};
use crate::report::{InvalidStructure, ValidationReport};
use crate::scalar::Scalar;

/// Leibniz algebra on basis `e_0 .. e_{dim-1}`.
#[derive(Clone, Debug)]
pub struct LeibnizAlgebra {
    pub dim: usize,
    /// Flat tensor, index `((i * dim) + j) * dim + k`.
    bracket: Vec<Scalar>,
    pub labels: Option<Vec<String>>,
}

impl LeibnizAlgebra {
    pub fn new(dim: usize, bracket: Vec<Scalar>) -> Self {
        assert_eq!(bracket.len(), dim * dim * dim, "bracket tensor shape");
        LeibnizAlgebra {
            dim,
            bracket,
            labels: None,
        }
    }

    /// Build from a sparse list of `(i, j, k, coeff)` entries.
    pub fn from_sparse(dim: usize, entries: &[(usize, usize, usize, Scalar)]) -> Self {
        let mut bracket = vec![Scalar::zero(); dim * dim * dim];
        for (i, j, k, c) in entries {
            bracket[(i * dim + j) * dim + k] = c.clone();
        }
        LeibnizAlgebra::new(dim, bracket)
    }

    /// Coordinates of `e_i ∘ e_j`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Scalar] {
        let d = self.dim;
        &self.bracket[(i * d + j) * d..(i * d + j + 1) * d]
    }

    /// `x ∘ y` for arbitrary coordinate vectors.
    pub fn bracket_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
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

    /// Left multiplication matrix of `e_i` (column `j` is `e_i ∘ e_j`).
    pub fn left_mult(&self, i: usize) -> Matrix {
        Matrix::from_fn(self.dim, self.dim, |k, j| self.bracket_basis(i, j)[k].clone())
    }

    /// The symmetric pairing `(x, y) = x∘y + y∘x`.
    pub fn sym_pairing(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut a = self.bracket_vec(x, y);
        let b = self.bracket_vec(y, x);
        for (u, v) in a.iter_mut().zip(&b) {
            *u += v;
        }
        a
    }

    /// Check the left Leibniz identity on all basis triples.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::new();
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let ei = unit(d, i);
                    let ej = unit(d, j);
                    let ek = unit(d, k);
                    let lhs = self.bracket_vec(&ei, &self.bracket_vec(&ej, &ek));
                    let mut rhs = self.bracket_vec(&self.bracket_vec(&ei, &ej), &ek);
                    let extra = self.bracket_vec(&ej, &self.bracket_vec(&ei, &ek));
                    for (u, v) in rhs.iter_mut().zip(&extra) {
                        *u += v;
                    }
                    rep.record(lhs == rhs, "leibniz identity", || {
                        format!("triple (e{i}, e{j}, e{k})")
                    });
                }
            }
        }
        rep
    }

    /// Left center `Z = {x : x ∘ e = 0 for all e}`, computed exactly as a
    /// nullspace; the result is checked to be a two-sided ideal.
    pub fn left_center(&self) -> Subspace {
        let d = self.dim;
        // Row per (j, k): Σ_i x_i c[i][j][k] = 0.
        let m = Matrix::from_fn(d * d, d, |row, i| {
            let (j, k) = (row / d, row % d);
            self.bracket_basis(i, j)[k].clone()
        });
        let z = m.nullspace();
        debug_assert!(self.is_ideal(&z), "left center must be an ideal");
        z
    }

    fn is_ideal(&self, s: &Subspace) -> bool {
        let d = self.dim;
        s.basis_vectors().iter().all(|h| {
            (0..d).all(|i| {
                let e = unit(d, i);
                s.contains_vec(&self.bracket_vec(h, &e)) && s.contains_vec(&self.bracket_vec(&e, h))
            })
        })
    }

    /// Checks for an isotropic ideal `H`: `Z ⊆ H`, `(H, H) = 0`, and
    /// two-sidedness. `require_center` is dropped for extension outputs,
    /// whose left center can grow past `H̄`.
    pub fn validate_h_ideal_with(&self, h: &Subspace, require_center: bool) -> ValidationReport {
        let mut rep = ValidationReport::new();
        assert_eq!(h.ambient_dim(), self.dim, "ambient mismatch");
        if require_center {
            let z = self.left_center();
            rep.record(h.contains(&z), "left center contained in H", || {
                format!("Z has dim {}, H has dim {}", z.dim(), h.dim())
            });
        }
        let hb = h.basis_vectors();
        for (a, ha) in hb.iter().enumerate() {
            for (b, hbv) in hb.iter().enumerate().skip(a) {
                let p = self.sym_pairing(ha, hbv);
                rep.record(p.iter().all(Scalar::is_zero), "isotropy of (.,.) on H", || {
                    format!("H basis pair ({a}, {b})")
                });
            }
        }
        for (a, ha) in hb.iter().enumerate() {
            for i in 0..self.dim {
                let e = unit(self.dim, i);
                rep.record(
                    h.contains_vec(&self.bracket_vec(ha, &e)),
                    "H ∘ L ⊆ H",
                    || format!("h{a} ∘ e{i}"),
                );
                rep.record(
                    h.contains_vec(&self.bracket_vec(&e, ha)),
                    "L ∘ H ⊆ H",
                    || format!("e{i} ∘ h{a}"),
                );
            }
        }
        rep
    }

    pub fn validate_h_ideal(&self, h: &Subspace) -> ValidationReport {
        self.validate_h_ideal_with(h, true)
    }
}

pub fn unit(dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    v[i] = Scalar::one();
    v
}

/// A left representation `τ : L → gl(V)`, one matrix per basis element.
#[derive(Clone, Debug)]
pub struct LeftRepresentation {
    pub dim_v: usize,
    pub action: Vec<Matrix>,
}

impl LeftRepresentation {
    pub fn trivial(dim_l: usize, dim_v: usize) -> Self {
        LeftRepresentation {
            dim_v,
            action: vec![Matrix::zeros(dim_v, dim_v); dim_l],
        }
    }

    pub fn tau_vec(&self, x: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.dim_v, self.dim_v);
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                m = m.add(&self.action[i].scale(xi));
            }
        }
        m
    }

    /// Homomorphism into commutators plus `H`-triviality.
    pub fn validate(&self, alg: &LeibnizAlgebra, h: &Subspace) -> ValidationReport {
        let mut rep = ValidationReport::new();
        assert_eq!(self.action.len(), alg.dim, "one action matrix per basis element");
        for i in 0..alg.dim {
            for j in 0..alg.dim {
                let lhs = {
                    let mut m = Matrix::zeros(self.dim_v, self.dim_v);
                    for (k, c) in alg.bracket_basis(i, j).iter().enumerate() {
                        if !c.is_zero() {
                            m = m.add(&self.action[k].scale(c));
                        }
                    }
                    m
                };
                let rhs = self.action[i]
                    .matmul(&self.action[j])
                    .sub(&self.action[j].matmul(&self.action[i]));
                rep.record(lhs == rhs, "τ(e_i∘e_j) = [τ_i, τ_j]", || {
                    format!("pair (e{i}, e{j})")
                });
            }
        }
        for (a, hv) in h.basis_vectors().iter().enumerate() {
            rep.record(self.tau_vec(hv).is_zero(), "τ(h) = 0 on H", || {
                format!("H basis vector {a}")
            });
        }
        rep
    }
}

/// A finite-dimensional Lie algebra with a representation, the target of
/// the quotient construction and the input of the CE oracle.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    pub dim: usize,
    /// Flat antisymmetric tensor, same layout as `LeibnizAlgebra::bracket`.
    pub bracket: Vec<Scalar>,
    pub rep: LeftRepresentation,
}

impl LieAlgebra {
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Scalar] {
        let d = self.dim;
        &self.bracket[(i * d + j) * d..(i * d + j + 1) * d]
    }

    pub fn validate(&self) -> ValidationReport {
        let alg = LeibnizAlgebra::new(self.dim, self.bracket.clone());
        let mut rep = alg.validate(); // Jacobi = Leibniz for antisymmetric brackets
        for i in 0..self.dim {
            for j in 0..=i {
                let mut s = alg.bracket_vec(&unit(self.dim, i), &unit(self.dim, j));
                let t = alg.bracket_vec(&unit(self.dim, j), &unit(self.dim, i));
                for (u, v) in s.iter_mut().zip(&t) {
                    *u += v;
                }
                rep.record(s.iter().all(Scalar::is_zero), "antisymmetry", || {
                    format!("pair (e{i}, e{j})")
                });
            }
        }
        rep
    }
}

/// A chosen complement of `H`: greedy selection of standard basis vectors
/// extending the echelon basis of `H`.
pub fn greedy_complement(dim: usize, h: &Subspace) -> Vec<Vec<Scalar>> {
    let mut chosen: Vec<Vec<Scalar>> = Vec::new();
    let mut span = h.clone();
    for i in 0..dim {
        if span.dim() == dim {
            break;
        }
        let e = unit(dim, i);
        if !span.contains_vec(&e) {
            span = span.sum(&Subspace::from_vectors(dim, vec![e.clone()]));
            chosen.push(e);
        }
    }
    chosen
}

/// Data of the quotient `L/H` with the induced action on `V`.
pub struct Quotient {
    pub lie: LieAlgebra,
    /// Complement basis vectors (rows, in `L` coordinates).
    pub complement: Vec<Vec<Scalar>>,
    /// `dim(L) × dim(L)` projection onto the complement coordinates along `H`;
    /// row `q` gives the `x_q`-coordinate of the projection.
    pub project: Matrix,
}

/// Quotient Lie algebra `L/H` with the induced representation.
///
/// Fails (with the offending report) if `(L, H, V)` does not validate, since
/// well-definedness of the induced bracket is exactly the ideal property.
pub fn quotient_lie(
    alg: &LeibnizAlgebra,
    h: &Subspace,
    rep: &LeftRepresentation,
) -> Result<Quotient, InvalidStructure> {
    let idl = alg.validate_h_ideal(h);
    if !idl.is_valid() {
        return Err(InvalidStructure::new("H is not a valid isotropic ideal", idl));
    }
    let vrep = rep.validate(alg, h);
    if !vrep.is_valid() {
        return Err(InvalidStructure::new("V is not an H-representation", vrep));
    }

    let complement = greedy_complement(alg.dim, h);
    let q = complement.len();
    // Change of basis: columns are H basis then complement.
    let mut cols: Vec<Vec<Scalar>> = h.basis_vectors();
    cols.extend(complement.iter().cloned());
    let basis_mat = Matrix::from_rows(cols).transpose();
    // project * e_i = complement coordinates of e_i mod H.
    let mut project = Matrix::zeros(q, alg.dim);
    for i in 0..alg.dim {
        let coords = basis_mat
            .solve(&unit(alg.dim, i))
            .expect("split basis spans the ambient space");
        for r in 0..q {
            project.set(r, i, coords[h.dim() + r].clone());
        }
    }

    let project_vec = |v: &[Scalar]| project.mul_vec(v);

    let mut bracket = vec![Scalar::zero(); q * q * q];
    for a in 0..q {
        for b in 0..q {
            let br = alg.bracket_vec(&complement[a], &complement[b]);
            let coords = project_vec(&br);
            for (c, val) in coords.into_iter().enumerate() {
                bracket[(a * q + b) * q + c] = val;
            }
        }
    }
    let action = complement.iter().map(|x| rep.tau_vec(x)).collect();
    let lie = LieAlgebra {
        dim: q,
        bracket,
        rep: LeftRepresentation {
            dim_v: rep.dim_v,
            action,
        },
    };
    let check = lie.validate();
    if !check.is_valid() {
        return Err(InvalidStructure::new(
            "induced quotient bracket is not a Lie algebra (invalid H?)",
            check,
        ));
    }
    Ok(Quotient {
        lie,
        complement,
        project,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn abelian_is_valid_any_dim() {
        for d in 1..4 {
            let alg = LeibnizAlgebra::new(d, vec![Scalar::zero(); d * d * d]);
            assert!(alg.validate().is_valid());
            assert_eq!(alg.left_center(), Subspace::full(d));
        }
    }

    #[test]
    fn dim2_nilpotent_fixture() {
        let alg = fixtures::dim2_leibniz();
        assert!(alg.validate().is_valid());
        // e1∘e1 = e2 only: left center is span{e2}.
        let z = alg.left_center();
        assert_eq!(z, Subspace::from_vectors(2, vec![vec![s(0), s(1)]]));
        // (e1, e1) = 2 e2.
        let p = alg.sym_pairing(&unit(2, 0), &unit(2, 0));
        assert_eq!(p, vec![s(0), s(2)]);
    }

    #[test]
    fn invalid_bracket_reports_witness() {
        // e1∘e2 = e1 and e2∘e1 = e1 violates the Leibniz identity.
        let alg = LeibnizAlgebra::from_sparse(
            2,
            &[(0, 1, 0, Scalar::one()), (1, 0, 0, Scalar::one())],
        );
        let rep = alg.validate();
        assert!(!rep.is_valid());
        assert!(rep.first().unwrap().witness.contains("(e"));
    }

    #[test]
    fn lie_algebra_pairing_vanishes() {
        let alg = fixtures::heisenberg();
        assert!(alg.validate().is_valid());
        for i in 0..3 {
            for j in 0..3 {
                let p = alg.sym_pairing(&unit(3, i), &unit(3, j));
                assert!(p.iter().all(Scalar::is_zero));
            }
        }
    }

    #[test]
    fn omni_lie_center_and_pairing() {
        let alg = fixtures::omni_lie(1);
        let z = alg.left_center();
        assert_eq!(z, Subspace::from_vectors(2, vec![vec![s(0), s(1)]]));
        // (A, v) = A∘v + v∘A = v.
        let p = alg.sym_pairing(&unit(2, 0), &unit(2, 1));
        assert_eq!(p, vec![s(0), s(1)]);
    }

    #[test]
    fn pairing_lands_in_center_and_is_invariant() {
        for alg in [fixtures::dim2_leibniz(), fixtures::omni_lie(2), fixtures::heisenberg()] {
            let z = alg.left_center();
            let d = alg.dim;
            for i in 0..d {
                for j in 0..d {
                    let p = alg.sym_pairing(&unit(d, i), &unit(d, j));
                    assert!(z.contains_vec(&p), "pairing image must lie in Z");
                    // invariance: e∘(x,y) = (e∘x, y) + (x, e∘y)
                    for e in 0..d {
                        let lhs = alg.bracket_vec(&unit(d, e), &p);
                        let mut rhs =
                            alg.sym_pairing(&alg.bracket_vec(&unit(d, e), &unit(d, i)), &unit(d, j));
                        let extra =
                            alg.sym_pairing(&unit(d, i), &alg.bracket_vec(&unit(d, e), &unit(d, j)));
                        for (u, v) in rhs.iter_mut().zip(&extra) {
                            *u += v;
                        }
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn h_ideal_checks() {
        let alg = fixtures::dim2_leibniz();
        let h = Subspace::from_vectors(2, vec![vec![s(0), s(1)]]);
        assert!(alg.validate_h_ideal(&h).is_valid());

        // Full space fails isotropy: (e1, e1) = 2 e2 ≠ 0.
        let full = Subspace::full(2);
        let rep = alg.validate_h_ideal(&full);
        assert!(!rep.is_valid());
        assert!(rep.violations.iter().any(|v| v.check.contains("isotropy")));

        // Heisenberg center is a valid H.
        let heis = fixtures::heisenberg();
        let hh = Subspace::from_vectors(3, vec![vec![s(0), s(0), s(1)]]);
        assert!(heis.validate_h_ideal(&hh).is_valid());
    }

    #[test]
    fn h_representation_checks() {
        let alg = fixtures::omni_lie(1);
        let h = Subspace::from_vectors(2, vec![vec![s(0), s(1)]]);
        // τ(A) = 1, τ(v) = 0 is a valid H-representation.
        let rep = fixtures::omni_lie_rep(1);
        assert!(rep.validate(&alg, &h).is_valid());
        // τ with τ(v) = 1 fails H-triviality.
        let bad = LeftRepresentation {
            dim_v: 1,
            action: vec![Matrix::identity(1), Matrix::identity(1)],
        };
        let out = bad.validate(&alg, &h);
        assert!(out.violations.iter().any(|v| v.check.contains("τ(h) = 0")));
        // τ ≡ 0 is always valid.
        let triv = LeftRepresentation::trivial(2, 3);
        assert!(triv.validate(&alg, &h).is_valid());
    }

    #[test]
    fn quotients() {
        // Abelian with H = L: zero-dimensional quotient.
        let ab = LeibnizAlgebra::new(2, vec![Scalar::zero(); 8]);
        let q = quotient_lie(&ab, &Subspace::full(2), &LeftRepresentation::trivial(2, 1)).unwrap();
        assert_eq!(q.lie.dim, 0);

        // dim-2 fixture: 1-dim abelian quotient.
        let alg = fixtures::dim2_leibniz();
        let h = Subspace::from_vectors(2, vec![vec![s(0), s(1)]]);
        let q = quotient_lie(&alg, &h, &LeftRepresentation::trivial(2, 1)).unwrap();
        assert_eq!(q.lie.dim, 1);
        assert!(q.lie.bracket.iter().all(Scalar::is_zero));

        // Heisenberg mod center: 2-dim abelian.
        let heis = fixtures::heisenberg();
        let hh = Subspace::from_vectors(3, vec![vec![s(0), s(0), s(1)]]);
        let q = quotient_lie(&heis, &hh, &LeftRepresentation::trivial(3, 1)).unwrap();
        assert_eq!(q.lie.dim, 2);
        assert!(q.lie.bracket.iter().all(Scalar::is_zero));
    }
}
