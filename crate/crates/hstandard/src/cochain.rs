//! Cochain coordinates and the H-standard cochain space.
//!
//! A degree-`n` cochain is a sequence `(ω_0, …, ω_{⌊n/2⌋})` where `ω_k`
//! takes `n−2k` ambient arguments and a sorted multiset of `k` `H`-slots,
//! with values in `V`. Cochains are coordinatized densely over all basis
//! tuples; validity (weak skew-symmetry, and weak `R`-linearity plus
//! `H`-slot `R`-linearity when the scalar layer is active) is a linear
//! condition, and the valid subspace is produced as follows:
//!
//! * weak skew-symmetry is solved *structurally*: the value on any tuple
//!   is determined by the values on strictly increasing tuples through a
//!   memoized straightening recursion (swap adjacent arguments, paying a
//!   `P`-correction in the next component). Every produced basis vector is
//!   re-verified against the raw equations, so the recursion is
//!   self-certifying;
//! * the `R`-linearity conditions are then a small linear system over the
//!   straightened coordinates, solved exactly.
//!
//! This keeps the expensive objects sparse while returning exactly the
//! nullspace of the full condition system.

use crate::context::HContext;
use crate::matrix::{Matrix, RrefAccum, Subspace};
use crate::report::ValidationReport;
use crate::scalar::Scalar;
use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

/// Sorted multisets of size `k` over `0..dh`, in lexicographic order.
pub fn multisets(dh: usize, k: usize) -> Vec<Vec<u8>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if dh == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    fn rec(start: u8, dh: u8, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for m in start..dh {
            cur.push(m);
            rec(m, dh, left - 1, cur, out);
            cur.pop();
        }
    }
    rec(0, dh as u8, k, &mut Vec::new(), &mut out);
    out
}

/// Strictly increasing `k`-tuples over `0..d`, in lexicographic order.
pub fn increasing_tuples(d: usize, k: usize) -> Vec<Vec<u8>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if k > d {
        return Vec::new();
    }
    let mut out = Vec::new();
    fn rec(start: u8, d: u8, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for m in start..d {
            cur.push(m);
            rec(m + 1, d, left - 1, cur, out);
            cur.pop();
        }
    }
    rec(0, d as u8, k, &mut Vec::new(), &mut out);
    out
}

pub fn insert_sorted(ms: &[u8], m: u8) -> Vec<u8> {
    let pos = ms.partition_point(|&x| x <= m);
    let mut out = Vec::with_capacity(ms.len() + 1);
    out.extend_from_slice(&ms[..pos]);
    out.push(m);
    out.extend_from_slice(&ms[pos..]);
    out
}

/// Layout of one component `ω_k` inside the flat coordinate vector.
#[derive(Clone, Debug)]
pub struct CompLayout {
    pub k: usize,
    pub arity: usize,
    pub n_tuples: usize,
    pub msets: Vec<Vec<u8>>,
    /// Scalar offset of this component in the flat vector.
    pub offset: usize,
    pub size: usize,
}

/// Coordinate layout of degree-`n` cochains for a given context.
#[derive(Clone, Debug)]
pub struct Layout {
    pub degree: usize,
    pub dim_e: usize,
    pub dim_h: usize,
    pub dim_v: usize,
    pub comps: Vec<CompLayout>,
    pub total: usize,
    mset_idx: Vec<HashMap<Vec<u8>, usize>>,
}

impl Layout {
    pub fn new(ctx: &HContext, degree: usize) -> Layout {
        let (dim_e, dim_h, dim_v) = (ctx.dim_e, ctx.dim_h(), ctx.dim_v);
        let mut comps = Vec::new();
        let mut mset_idx = Vec::new();
        let mut offset = 0;
        for k in 0..=degree / 2 {
            let arity = degree - 2 * k;
            let msets = multisets(dim_h, k);
            let n_tuples = dim_e.pow(arity as u32);
            let size = n_tuples * msets.len() * dim_v;
            let idx: HashMap<Vec<u8>, usize> = msets
                .iter()
                .enumerate()
                .map(|(i, m)| (m.clone(), i))
                .collect();
            comps.push(CompLayout {
                k,
                arity,
                n_tuples,
                msets,
                offset,
                size,
            });
            mset_idx.push(idx);
            offset += size;
        }
        Layout {
            degree,
            dim_e,
            dim_h,
            dim_v,
            comps,
            total: offset,
            mset_idx,
        }
    }

    pub fn tuple_index(&self, t: &[u8]) -> usize {
        t.iter().fold(0usize, |acc, &x| acc * self.dim_e + x as usize)
    }

    pub fn decode_tuple(&self, k: usize, mut idx: usize) -> Vec<u8> {
        let arity = self.comps[k].arity;
        let mut t = vec![0u8; arity];
        for pos in (0..arity).rev() {
            t[pos] = (idx % self.dim_e) as u8;
            idx /= self.dim_e;
        }
        t
    }

    pub fn mset_index(&self, k: usize, ms: &[u8]) -> usize {
        self.mset_idx[k][ms]
    }

    /// Flat index of coordinate `(k, tuple, mset, v)`.
    pub fn index(&self, k: usize, t: &[u8], ms: &[u8], v: usize) -> usize {
        let c = &self.comps[k];
        debug_assert_eq!(t.len(), c.arity);
        c.offset + (self.tuple_index(t) * c.msets.len() + self.mset_index(k, ms)) * self.dim_v + v
    }
}

/// A cochain as a flat exact coordinate vector in a degree layout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub data: Vec<Scalar>,
}

impl Cochain {
    pub fn zero(layout: &Layout) -> Cochain {
        Cochain {
            degree: layout.degree,
            data: vec![Scalar::zero(); layout.total],
        }
    }

    pub fn get<'a>(&'a self, layout: &Layout, k: usize, t: &[u8], ms: &[u8], v: usize) -> &'a Scalar {
        &self.data[layout.index(k, t, ms, v)]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// True when every component with `k ≥ 1` vanishes.
    pub fn higher_components_vanish(&self, layout: &Layout) -> bool {
        layout.comps[1..]
            .iter()
            .all(|c| self.data[c.offset..c.offset + c.size].iter().all(Scalar::is_zero))
    }
}

/// Memoized weak-skew-symmetry straightening.
///
/// `expand(t, ms)` writes the raw coordinate `ω_{|ms|}(t; ms)` as an exact
/// linear combination of coordinates on strictly increasing tuples. Swapping
/// a descent `t[a] > t[a+1]` costs a sign and a `P(t_a, t_{a+1})` correction
/// in the next component; a repeated adjacent argument is determined
/// entirely by the next component (characteristic 0).
pub struct Straightener<'a> {
    ctx: &'a HContext,
    memo: RefCell<HashMap<(Vec<u8>, Vec<u8>), Rc<Vec<(Vec<u8>, Vec<u8>, Scalar)>>>>,
}

impl<'a> Straightener<'a> {
    pub fn new(ctx: &'a HContext) -> Self {
        Straightener {
            ctx,
            memo: RefCell::new(HashMap::new()),
        }
    }

    pub fn expand(&self, t: &[u8], ms: &[u8]) -> Rc<Vec<(Vec<u8>, Vec<u8>, Scalar)>> {
        if let Some(hit) = self.memo.borrow().get(&(t.to_vec(), ms.to_vec())) {
            return hit.clone();
        }
        let result = self.compute(t, ms);
        let rc = Rc::new(result);
        self.memo
            .borrow_mut()
            .insert((t.to_vec(), ms.to_vec()), rc.clone());
        rc
    }

    fn compute(&self, t: &[u8], ms: &[u8]) -> Vec<(Vec<u8>, Vec<u8>, Scalar)> {
        let descent = (0..t.len().saturating_sub(1)).find(|&a| t[a] >= t[a + 1]);
        let Some(a) = descent else {
            return vec![(t.to_vec(), ms.to_vec(), Scalar::one())];
        };
        let mut acc: std::collections::BTreeMap<(Vec<u8>, Vec<u8>), Scalar> =
            std::collections::BTreeMap::new();
        let mut add_expansion = |terms: &[(Vec<u8>, Vec<u8>, Scalar)], factor: &Scalar| {
            for (tt, mm, c) in terms {
                let entry = acc
                    .entry((tt.clone(), mm.clone()))
                    .or_insert_with(Scalar::zero);
                entry.add_mul_assign(factor, c);
            }
        };
        let shorter: Vec<u8> = t
            .iter()
            .enumerate()
            .filter(|(p, _)| *p != a && *p != a + 1)
            .map(|(_, &x)| x)
            .collect();
        let (i, j) = (t[a] as usize, t[a + 1] as usize);
        if t[a] == t[a + 1] {
            // 2 ω(..i,i..) = -ω_{k+1}(..; P(i,i), ..)
            let half = Scalar::new(-1, 2);
            for (m, c) in self.ctx.pair_h_basis(i, i).iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let factor = &half * c;
                let sub = self.expand(&shorter, &insert_sorted(ms, m as u8));
                add_expansion(&sub, &factor);
            }
        } else {
            // ω(..i,j..) = -ω(..j,i..) - ω_{k+1}(..; P(i,j), ..)
            let mut swapped = t.to_vec();
            swapped.swap(a, a + 1);
            let sub = self.expand(&swapped, ms);
            add_expansion(&sub, &-Scalar::one());
            for (m, c) in self.ctx.pair_h_basis(i, j).iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let factor = -c;
                let sub = self.expand(&shorter, &insert_sorted(ms, m as u8));
                add_expansion(&sub, &factor);
            }
        }
        acc.into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((tt, mm), c)| (tt, mm, c))
            .collect()
    }
}

/// Enumeration of the straightened ("reduced") coordinates: strictly
/// increasing tuples per component.
#[derive(Clone, Debug)]
pub struct ReducedLayout {
    pub degree: usize,
    pub dim_v: usize,
    pub comps: Vec<ReducedComp>,
    /// Number of base coordinates (without the `V` factor).
    pub total_base: usize,
    /// Total scalar coordinates (with the `V` factor).
    pub total: usize,
}

#[derive(Clone, Debug)]
pub struct ReducedComp {
    pub k: usize,
    pub tuples: Vec<Vec<u8>>,
    pub msets: Vec<Vec<u8>>,
    /// Base offset of this component.
    pub offset: usize,
}

impl ReducedLayout {
    pub fn new(layout: &Layout) -> ReducedLayout {
        let mut comps = Vec::new();
        let mut offset = 0;
        for c in &layout.comps {
            let tuples = increasing_tuples(layout.dim_e, c.arity);
            let n = tuples.len() * c.msets.len();
            comps.push(ReducedComp {
                k: c.k,
                tuples,
                msets: c.msets.clone(),
                offset,
            });
            offset += n;
        }
        ReducedLayout {
            degree: layout.degree,
            dim_v: layout.dim_v,
            comps,
            total_base: offset,
            total: offset * layout.dim_v,
        }
    }

    /// Base index of `(k, increasing tuple, mset)`.
    pub fn base_index(&self, k: usize, t: &[u8], ms: &[u8]) -> usize {
        let c = &self.comps[k];
        let ti = c
            .tuples
            .binary_search_by(|probe| probe.as_slice().cmp(t))
            .expect("tuple must be strictly increasing and in range");
        let mi = c
            .msets
            .binary_search_by(|probe| probe.as_slice().cmp(ms))
            .expect("mset must be sorted and in range");
        c.offset + ti * c.msets.len() + mi
    }

    /// Read the reduced coordinates out of a raw vector.
    pub fn readout(&self, layout: &Layout, raw: &[Scalar]) -> Vec<Scalar> {
        let dv = self.dim_v;
        let mut out = vec![Scalar::zero(); self.total];
        for c in &self.comps {
            for t in &c.tuples {
                for ms in &c.msets {
                    let base = self.base_index(c.k, t, ms);
                    for v in 0..dv {
                        out[base * dv + v] = raw[layout.index(c.k, t, ms, v)].clone();
                    }
                }
            }
        }
        out
    }
}

/// A `V`-coefficient of a linear term: either a scalar acting diagonally on
/// the `V`-coordinates or a full mixing matrix.
#[derive(Clone, Debug)]
pub enum Coef {
    Diag(Scalar),
    Mix(Matrix),
}

/// One linear term `coef · ω_{|ms|}(tuple; ms)` of a condition equation.
#[derive(Clone, Debug)]
pub struct Term {
    pub tuple: Vec<u8>,
    pub ms: Vec<u8>,
    pub coef: Coef,
}

/// Which condition families to enumerate.
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum ConditionSet {
    All,
    WeakSkewOnly,
    RLinearityOnly,
}

/// Enumerate the condition equations of degree `n` cochains; each equation
/// (a `V`-valued linear functional that must vanish) is passed to `f` as a
/// term list.
pub fn for_each_condition(
    ctx: &HContext,
    layout: &Layout,
    which: ConditionSet,
    mut f: impl FnMut(&str, &[Term]),
) {
    let mut terms: Vec<Term> = Vec::new();
    let dim_e = ctx.dim_e;
    // Condition 1: weak skew-symmetry in adjacent ambient arguments.
    if which != ConditionSet::RLinearityOnly {
        for c in &layout.comps {
            if c.arity < 2 {
                continue;
            }
            for ti in 0..c.n_tuples {
                let t = layout.decode_tuple(c.k, ti);
                for a in 0..c.arity - 1 {
                    if t[a] > t[a + 1] {
                        continue; // same equation as the swapped tuple
                    }
                    for ms in &c.msets {
                        terms.clear();
                        terms.push(Term {
                            tuple: t.clone(),
                            ms: ms.clone(),
                            coef: Coef::Diag(Scalar::one()),
                        });
                        let mut swapped = t.clone();
                        swapped.swap(a, a + 1);
                        terms.push(Term {
                            tuple: swapped,
                            ms: ms.clone(),
                            coef: Coef::Diag(Scalar::one()),
                        });
                        let shorter: Vec<u8> = t
                            .iter()
                            .enumerate()
                            .filter(|(p, _)| *p != a && *p != a + 1)
                            .map(|(_, &x)| x)
                            .collect();
                        for (m, pc) in ctx
                            .pair_h_basis(t[a] as usize, t[a + 1] as usize)
                            .iter()
                            .enumerate()
                        {
                            if pc.is_zero() {
                                continue;
                            }
                            terms.push(Term {
                                tuple: shorter.clone(),
                                ms: insert_sorted(ms, m as u8),
                                coef: Coef::Diag(pc.clone()),
                            });
                        }
                        f("weak skew-symmetry", &terms);
                    }
                }
            }
        }
    }
    let Some(layer) = &ctx.scalars else {
        return;
    };
    if which == ConditionSet::WeakSkewOnly {
        return;
    }
    let dim_r = layer.dim_r();
    // Condition 2: weak R-linearity in ambient arguments.
    for comp in &layout.comps {
        if comp.arity == 0 {
            continue;
        }
        for ti in 0..comp.n_tuples {
            let t = layout.decode_tuple(comp.k, ti);
            for a in 0..comp.arity {
                for cc in 0..dim_r {
                    for ms in &comp.msets {
                        terms.clear();
                        // ω(.. f·e_a ..) expanded over the ambient basis.
                        for m in 0..dim_e {
                            let coeff = layer.act_e[cc].get(m, t[a] as usize);
                            if coeff.is_zero() {
                                continue;
                            }
                            let mut tt = t.clone();
                            tt[a] = m as u8;
                            terms.push(Term {
                                tuple: tt,
                                ms: ms.clone(),
                                coef: Coef::Diag(coeff.clone()),
                            });
                        }
                        // - f · ω(..)
                        terms.push(Term {
                            tuple: t.clone(),
                            ms: ms.clone(),
                            coef: Coef::Mix(layer.act_v[cc].scale(&-Scalar::one())),
                        });
                        // - Σ_{b>a} (-1)^{b-a} ⟨e_a, e_b⟩ ω_{k+1}(.. ê_a .. ê_b ..; ∂f, ..)
                        for b in a + 1..comp.arity {
                            let sign = if (b - a) % 2 == 0 { 1 } else { -1 };
                            let pairing = layer.pairing_r(t[a] as usize, t[b] as usize, dim_e);
                            if pairing.iter().all(Scalar::is_zero) {
                                continue;
                            }
                            // R-action of ⟨e_a,e_b⟩ on the value.
                            let mut mix = Matrix::zeros(layout.dim_v, layout.dim_v);
                            for (cp, g) in pairing.iter().enumerate() {
                                if !g.is_zero() {
                                    mix = mix.add(&layer.act_v[cp].scale(g));
                                }
                            }
                            let mix = mix.scale(&Scalar::from_int(-sign));
                            let shorter: Vec<u8> = t
                                .iter()
                                .enumerate()
                                .filter(|(p, _)| *p != a && *p != b)
                                .map(|(_, &x)| x)
                                .collect();
                            for m in 0..ctx.dim_h() {
                                let pc = layer.partial_h.get(m, cc);
                                if pc.is_zero() {
                                    continue;
                                }
                                terms.push(Term {
                                    tuple: shorter.clone(),
                                    ms: insert_sorted(ms, m as u8),
                                    coef: Coef::Mix(mix.scale(pc)),
                                });
                            }
                        }
                        f("weak R-linearity", &terms);
                    }
                }
            }
        }
    }
    // Condition 3: R-linearity in H-slots.
    for comp in &layout.comps {
        if comp.k == 0 {
            continue;
        }
        for ti in 0..comp.n_tuples {
            let t = layout.decode_tuple(comp.k, ti);
            for ms in &comp.msets {
                let mut seen = Vec::new();
                for (slot, &j) in ms.iter().enumerate() {
                    if seen.contains(&j) {
                        continue;
                    }
                    seen.push(j);
                    let mut rest = ms.clone();
                    rest.remove(slot);
                    for cc in 0..dim_r {
                        terms.clear();
                        for m in 0..ctx.dim_h() {
                            let coeff = layer.act_h[cc].get(m, j as usize);
                            if coeff.is_zero() {
                                continue;
                            }
                            terms.push(Term {
                                tuple: t.clone(),
                                ms: insert_sorted(&rest, m as u8),
                                coef: Coef::Diag(coeff.clone()),
                            });
                        }
                        terms.push(Term {
                            tuple: t.clone(),
                            ms: ms.clone(),
                            coef: Coef::Mix(layer.act_v[cc].scale(&-Scalar::one())),
                        });
                        f("R-linearity in H-slots", &terms);
                    }
                }
            }
        }
    }
}

/// Evaluate an equation on a raw vector; returns the `V`-valued defect.
fn eval_equation(layout: &Layout, terms: &[Term], raw: &[Scalar]) -> Vec<Scalar> {
    let dv = layout.dim_v;
    let mut out = vec![Scalar::zero(); dv];
    for term in terms {
        let k = term.ms.len();
        match &term.coef {
            Coef::Diag(c) => {
                for v in 0..dv {
                    let idx = layout.index(k, &term.tuple, &term.ms, v);
                    out[v].add_mul_assign(c, &raw[idx]);
                }
            }
            Coef::Mix(m) => {
                for v in 0..dv {
                    for u in 0..dv {
                        let c = m.get(v, u);
                        if c.is_zero() {
                            continue;
                        }
                        let idx = layout.index(k, &term.tuple, &term.ms, u);
                        out[v].add_mul_assign(c, &raw[idx]);
                    }
                }
            }
        }
    }
    out
}

/// Check all cochain conditions on a raw vector.
pub fn verify_conditions(ctx: &HContext, layout: &Layout, raw: &[Scalar]) -> ValidationReport {
    let mut rep = ValidationReport::new();
    for_each_condition(ctx, layout, ConditionSet::All, |name, terms| {
        let defect = eval_equation(layout, terms, raw);
        rep.record(defect.iter().all(Scalar::is_zero), name, || {
            let t = &terms[0];
            format!("k={} tuple={:?} slots={:?}", t.ms.len(), t.tuple, t.ms)
        });
    });
    rep
}

/// Check conditions on several vectors at once (single enumeration pass).
pub fn verify_conditions_many(ctx: &HContext, layout: &Layout, raws: &[&[Scalar]]) -> Vec<bool> {
    let mut ok = vec![true; raws.len()];
    for_each_condition(ctx, layout, ConditionSet::All, |_, terms| {
        for (i, raw) in raws.iter().enumerate() {
            if ok[i] {
                let defect = eval_equation(layout, terms, raw);
                if !defect.iter().all(Scalar::is_zero) {
                    ok[i] = false;
                }
            }
        }
    });
    ok
}

/// The valid cochain space of one degree: canonical basis over the raw
/// coordinates, plus the layouts needed to work with it.
#[derive(Clone, Debug)]
pub struct ComplexBasis {
    pub degree: usize,
    pub layout: Layout,
    pub reduced: ReducedLayout,
    /// Canonical reduced-echelon basis of the valid subspace.
    pub basis: Subspace,
    /// Pivot (leading) column of each basis row.
    pivots: Vec<usize>,
}

impl ComplexBasis {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn raw_dim(&self) -> usize {
        self.layout.total
    }

    pub fn basis_vec(&self, i: usize) -> &[Scalar] {
        self.basis.basis().row(i)
    }

    /// Coordinates of a vector lying in the span (read off pivot columns).
    pub fn coords_of(&self, raw: &[Scalar]) -> Vec<Scalar> {
        self.pivots.iter().map(|&p| raw[p].clone()).collect()
    }

    /// Raw vector from basis coordinates.
    pub fn from_coords(&self, coords: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(coords.len(), self.dim());
        let mut out = vec![Scalar::zero(); self.layout.total];
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, b) in self.basis_vec(i).iter().enumerate() {
                out[j].add_mul_assign(c, b);
            }
        }
        out
    }

    pub fn contains(&self, raw: &[Scalar]) -> bool {
        let back = self.from_coords(&self.coords_of(raw));
        back.as_slice() == raw
    }
}

/// Shared machinery for building valid-cochain subspaces: the straightened
/// parametrization plus projection of extra linear conditions into it.
pub struct SpaceBuilder<'a> {
    pub ctx: &'a HContext,
    pub layout: Layout,
    pub reduced: ReducedLayout,
    straight: Straightener<'a>,
}

impl<'a> SpaceBuilder<'a> {
    pub fn new(ctx: &'a HContext, degree: usize) -> Self {
        let layout = Layout::new(ctx, degree);
        let reduced = ReducedLayout::new(&layout);
        SpaceBuilder {
            ctx,
            layout,
            reduced,
            straight: Straightener::new(ctx),
        }
    }

    /// Build the raw vector determined by straightened coordinates.
    pub fn lift(&self, rv: &[Scalar]) -> Vec<Scalar> {
        let layout = &self.layout;
        let dv = layout.dim_v;
        let mut out = vec![Scalar::zero(); layout.total];
        for c in &layout.comps {
            for ti in 0..c.n_tuples {
                let t = layout.decode_tuple(c.k, ti);
                for ms in &c.msets {
                    let expansion = self.straight.expand(&t, ms);
                    for (tt, mm, coeff) in expansion.iter() {
                        let base = self.reduced.base_index(mm.len(), tt, mm);
                        for v in 0..dv {
                            let val = &rv[base * dv + v];
                            if !val.is_zero() {
                                out[layout.index(c.k, &t, ms, v)].add_mul_assign(coeff, val);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Project a term-list equation into straightened coordinates; one row
    /// per `V`-coordinate.
    pub fn project_equation(&self, terms: &[Term]) -> Vec<Vec<Scalar>> {
        let dv = self.layout.dim_v;
        let mut rows = vec![vec![Scalar::zero(); self.reduced.total]; dv];
        for term in terms {
            let expansion = self.straight.expand(&term.tuple, &term.ms);
            for (tt, mm, c) in expansion.iter() {
                let base = self.reduced.base_index(mm.len(), tt, mm);
                match &term.coef {
                    Coef::Diag(d) => {
                        let f = d * c;
                        for v in 0..dv {
                            rows[v][base * dv + v] += &f;
                        }
                    }
                    Coef::Mix(m) => {
                        for v in 0..dv {
                            for u in 0..dv {
                                let entry = m.get(v, u);
                                if !entry.is_zero() {
                                    let f = entry * c;
                                    rows[v][base * dv + u] += &f;
                                }
                            }
                        }
                    }
                }
            }
        }
        rows
    }

    /// Insert the weak-/slot-`R`-linearity conditions (the scalar-layer
    /// conditions) as rows over the straightened coordinates.
    pub fn push_r_linearity_rows(&self, acc: &mut RrefAccum) {
        if self.ctx.scalars.is_none() {
            return;
        }
        for_each_condition(self.ctx, &self.layout, ConditionSet::RLinearityOnly, |_, terms| {
            for row in self.project_equation(terms) {
                acc.insert(row);
            }
        });
    }

    /// Lift a straightened-coordinate subspace into raw coordinates,
    /// canonicalize, and certify every raw condition on the result.
    pub fn finish(self, coeff_space: Subspace) -> ComplexBasis {
        let raw_vecs: Vec<Vec<Scalar>> = coeff_space
            .basis_vectors()
            .into_iter()
            .map(|rv| self.lift(&rv))
            .collect();
        let basis = Subspace::from_vectors(self.layout.total, raw_vecs);
        assert_eq!(
            basis.dim(),
            coeff_space.dim(),
            "straightened lift must stay independent"
        );

        let rows: Vec<&[Scalar]> = (0..basis.dim()).map(|i| basis.basis().row(i)).collect();
        let ok = verify_conditions_many(self.ctx, &self.layout, &rows);
        assert!(
            ok.iter().all(|&b| b),
            "internal error: straightening produced an invalid cochain (degree {})",
            self.layout.degree
        );

        let pivots = (0..basis.dim())
            .map(|i| {
                (0..self.layout.total)
                    .find(|&j| !basis.basis().get(i, j).is_zero())
                    .expect("basis rows are nonzero")
            })
            .collect();
        ComplexBasis {
            degree: self.layout.degree,
            layout: self.layout,
            reduced: self.reduced,
            basis,
            pivots,
        }
    }
}

/// Assemble the valid cochain space `C^n` for a context.
///
/// Panics if the straightened parametrization fails its own certification
/// (that would indicate an inconsistent context, not bad input data).
pub fn cochain_space(ctx: &HContext, degree: usize) -> ComplexBasis {
    let builder = SpaceBuilder::new(ctx, degree);
    let coeff_space = if ctx.scalars.is_some() {
        let mut acc = RrefAccum::new(builder.reduced.total);
        builder.push_r_linearity_rows(&mut acc);
        acc.nullspace()
    } else {
        Subspace::full(builder.reduced.total)
    };
    builder.finish(coeff_space)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn dim2_ctx() -> HContext {
        HContext::leibniz(
            &fixtures::dim2_leibniz(),
            &fixtures::dim2_h(),
            &fixtures::dim2_rep(),
        )
        .unwrap()
    }

    #[test]
    fn multiset_and_tuple_enumeration() {
        assert_eq!(multisets(2, 2), vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(multisets(0, 0).len(), 1);
        assert_eq!(multisets(0, 1).len(), 0);
        assert_eq!(increasing_tuples(3, 2).len(), 3);
        assert_eq!(increasing_tuples(2, 3).len(), 0);
    }

    #[test]
    fn layout_shapes() {
        let ctx = dim2_ctx();
        let l = Layout::new(&ctx, 4);
        // k = 0: 2^4 tuples; k = 1: 2^2 · 1; k = 2: 1 · 1.
        assert_eq!(l.comps.len(), 3);
        assert_eq!(l.comps[0].size, 16);
        assert_eq!(l.comps[1].size, 4);
        assert_eq!(l.comps[2].size, 1);
        assert_eq!(l.total, 21);
        let t = l.decode_tuple(0, 13);
        assert_eq!(l.tuple_index(&t), 13);
    }

    #[test]
    fn c0_is_all_of_v() {
        let ctx = dim2_ctx();
        assert_eq!(cochain_space(&ctx, 0).dim(), 1);
    }

    #[test]
    fn c1_is_unconstrained_for_leibniz() {
        let ctx = dim2_ctx();
        assert_eq!(cochain_space(&ctx, 1).dim(), 2);
    }

    #[test]
    fn c2_dimension_matches_hand_computation() {
        // Free parameters: ω0(e0, e1) and the top slot ω1; the diagonal
        // values are forced: ω0(e0,e0) = -ω1(e1-slot), ω0(e1,e1) = 0.
        let ctx = dim2_ctx();
        let basis = cochain_space(&ctx, 2);
        assert_eq!(basis.dim(), 2);
        // Check the forced relation on each basis vector.
        let l = &basis.layout;
        for i in 0..basis.dim() {
            let w = basis.basis_vec(i);
            let w00 = &w[l.index(0, &[0, 0], &[], 0)];
            let w1 = &w[l.index(1, &[], &[0], 0)];
            // 2 ω0(e0,e0) = -ω1(P(e0,e0)) = -2 ω1.
            assert!((w00 + w1).is_zero());
            let w11 = &w[l.index(0, &[1, 1], &[], 0)];
            assert!(w11.is_zero());
        }
    }

    #[test]
    fn strict_skew_when_pairing_vanishes() {
        // sl2 with H = 0: cochains are strictly alternating, so
        // dim C^n = C(3, n).
        let ctx = HContext::leibniz(
            &fixtures::sl2(),
            &Subspace::zero(3),
            &crate::leibniz::LeftRepresentation::trivial(3, 1),
        )
        .unwrap();
        for n in 0..=4 {
            let expect = [1usize, 3, 3, 1, 0][n];
            assert_eq!(cochain_space(&ctx, n).dim(), expect, "degree {n}");
        }
    }

    #[test]
    fn omni_lie_spaces() {
        let ctx = HContext::leibniz(
            &fixtures::omni_lie(1),
            &fixtures::omni_lie_h(1),
            &fixtures::omni_lie_rep(1),
        )
        .unwrap();
        // Reduced count: Σ_k C(2, n-2k)·msets(1,k): n=2 -> 1 + 1 = 2,
        // n=3 -> 0 + 2 = 2.
        assert_eq!(cochain_space(&ctx, 2).dim(), 2);
        assert_eq!(cochain_space(&ctx, 3).dim(), 2);
    }
}
