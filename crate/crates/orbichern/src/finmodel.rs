//! Verification at dimension zero: `X` is a finite `G`-set, constructible
//! functions are rational-valued functions on tuple spaces `X^n`, and the
//! canonical functions, diagonal pushforwards and ⊙-products are computed
//! literally — then compared pointwise, with exact arithmetic, against the
//! weight slices the symbolic engines produce. Any nonzero deviation is a
//! hard failure; there are no tolerances.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::diagalg::{
    dey_wohlfahrt_rhs, dey_wohlfahrt_wreath_rhs, wreath_base_assignment, BaseClass, BaseElement,
    DiagElement,
};
use crate::grp::{
    for_each_hom, j_sequence, orbit_sizes, Budget, FiniteGroup, GroupSpec, Permutation,
    WreathElement, WreathGroup, DEFAULT_GROUP_CAP,
};
use crate::homcount::{hom_count_into, index_subgroup_type, CycleType};
use crate::qexact::{factorial, Rat, Series};
use crate::{Error, Result};

/// A finite set with an action of a finite permutation group, given by one
/// lookup table per group element. Construction validates the action laws.
#[derive(Clone, Debug)]
pub struct GSet {
    points: usize,
    group: FiniteGroup,
    action: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct GSetRaw {
    points: usize,
    group: Vec<String>,
    action: Vec<Vec<usize>>,
}

impl GSet {
    /// Full per-element tables; checks identity, composition, and ranges.
    pub fn new(group: FiniteGroup, points: usize, action: Vec<Vec<usize>>) -> Result<Self> {
        if action.len() != group.order() {
            return Err(Error::BadAction(format!(
                "{} tables for a group of order {}",
                action.len(),
                group.order()
            )));
        }
        for (e, table) in action.iter().enumerate() {
            if table.len() != points {
                return Err(Error::BadAction(format!(
                    "table {e} has {} entries for {points} points",
                    table.len()
                )));
            }
            if table.iter().any(|&y| y >= points) {
                return Err(Error::BadAction(format!("table {e} maps out of range")));
            }
        }
        if action[0].iter().enumerate().any(|(x, &y)| x != y) {
            return Err(Error::BadAction("identity element must act trivially".into()));
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                let gh = group.mul(g, h);
                for x in 0..points {
                    if action[gh][x] != action[g][action[h][x]] {
                        return Err(Error::BadAction(format!(
                            "tables violate (g·h).x = g.(h.x) at g={g}, h={h}, x={x}"
                        )));
                    }
                }
            }
        }
        Ok(GSet {
            points,
            group,
            action,
        })
    }

    /// Tables for the generators only (in `group.generator_indices()` order);
    /// the remaining tables are composed along a breadth-first closure.
    pub fn from_generator_tables(
        group: FiniteGroup,
        points: usize,
        gen_tables: &[Vec<usize>],
    ) -> Result<Self> {
        let gens = group.generator_indices().to_vec();
        if gen_tables.len() != gens.len() {
            return Err(Error::BadAction(format!(
                "{} tables for {} generators",
                gen_tables.len(),
                gens.len()
            )));
        }
        let mut tables: Vec<Option<Vec<usize>>> = vec![None; group.order()];
        tables[0] = Some((0..points).collect());
        let mut queue = vec![0usize];
        while let Some(g) = queue.pop() {
            for (gt, &gi) in gen_tables.iter().zip(&gens) {
                if gt.len() != points || gt.iter().any(|&y| y >= points) {
                    return Err(Error::BadAction("generator table out of range".into()));
                }
                let ng = group.mul(gi, g);
                if tables[ng].is_none() {
                    let base = tables[g].as_ref().expect("visited").clone();
                    tables[ng] = Some(base.iter().map(|&x| gt[x]).collect());
                    queue.push(ng);
                }
            }
        }
        let action: Vec<Vec<usize>> = tables
            .into_iter()
            .map(|t| t.ok_or_else(|| Error::BadAction("generators do not generate the group".into())))
            .collect::<Result<_>>()?;
        GSet::new(group, points, action)
    }

    /// The group acting on its own permutation domain.
    pub fn natural(group: FiniteGroup) -> Result<Self> {
        let points = group.degree();
        let action = group
            .elements()
            .iter()
            .map(|p| (0..points).map(|x| p.apply(x)).collect())
            .collect();
        GSet::new(group, points, action)
    }

    /// The one-point set with everything acting trivially.
    pub fn point(group: FiniteGroup) -> Result<Self> {
        let action = vec![vec![0]; group.order()];
        GSet::new(group, 1, action)
    }

    /// `{"points": k, "group": [generator cycle strings], "action":
    /// [[table per generator]]}`; the group is closed from the generators.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: GSetRaw =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("GSet JSON: {e}")))?;
        let mut gens = Vec::new();
        for s in &raw.group {
            gens.push(Permutation::parse(s, None)?);
        }
        let degree = gens.iter().map(|p| p.degree()).max().unwrap_or(0);
        let gens: Vec<Permutation> = raw
            .group
            .iter()
            .map(|s| Permutation::parse(s, Some(degree)))
            .collect::<Result<_>>()?;
        let group = FiniteGroup::close_group(&gens, DEFAULT_GROUP_CAP)?;
        GSet::from_generator_tables(group, raw.points, &raw.action)
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn act(&self, element: usize, x: usize) -> usize {
        self.action[element][x]
    }

    /// Orbit index per point, plus the number of orbits.
    pub fn orbit_map(&self) -> (Vec<usize>, usize) {
        let mut id = vec![usize::MAX; self.points];
        let mut next = 0;
        for start in 0..self.points {
            if id[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            id[start] = next;
            while let Some(x) = stack.pop() {
                for g in 0..self.group.order() {
                    let y = self.act(g, x);
                    if id[y] == usize::MAX {
                        id[y] = next;
                        stack.push(y);
                    }
                }
            }
            next += 1;
        }
        (id, next)
    }

    /// The stabilizer of a point, as a bona fide group of the ambient
    /// permutation representation.
    pub fn stabilizer(&self, x: usize) -> Result<FiniteGroup> {
        let elems: Vec<Permutation> = (0..self.group.order())
            .filter(|&g| self.act(g, x) == x)
            .map(|g| self.group.element(g).clone())
            .collect();
        FiniteGroup::from_elements("stab", elems)
    }
}

/// A rational-valued function on the tuple space `X^arity`, stored densely.
/// Tuples are encoded little-endian: `(x_0, …, x_{a-1}) ↦ Σ x_i·points^i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConstrFn {
    points: usize,
    arity: usize,
    values: Vec<Rat>,
}

fn space_size(points: usize, arity: usize) -> usize {
    points
        .checked_pow(arity as u32)
        .expect("tuple space size overflows usize")
}

impl ConstrFn {
    pub fn zero(points: usize, arity: usize) -> Self {
        ConstrFn {
            points,
            arity,
            values: vec![Rat::zero(); space_size(points, arity)],
        }
    }

    pub fn constant(points: usize, arity: usize, r: &Rat) -> Self {
        ConstrFn {
            points,
            arity,
            values: vec![r.clone(); space_size(points, arity)],
        }
    }

    pub fn indicator(points: usize, arity: usize, pred: impl Fn(&[usize]) -> bool) -> Self {
        let mut out = ConstrFn::zero(points, arity);
        let mut t = vec![0usize; arity];
        for i in 0..out.values.len() {
            decode(points, i, &mut t);
            if pred(&t) {
                out.values[i] = Rat::one();
            }
        }
        out
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn encode(&self, t: &[usize]) -> usize {
        debug_assert_eq!(t.len(), self.arity);
        let mut idx = 0;
        for &x in t.iter().rev() {
            idx = idx * self.points + x;
        }
        idx
    }

    pub fn value(&self, t: &[usize]) -> &Rat {
        &self.values[self.encode(t)]
    }

    fn compat(&self, other: &Self) -> Result<()> {
        if self.points != other.points || self.arity != other.arity {
            return Err(Error::SizeMismatch(self.values.len(), other.values.len()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compat(other)?;
        Ok(ConstrFn {
            points: self.points,
            arity: self.arity,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.compat(other)?;
        Ok(ConstrFn {
            points: self.points,
            arity: self.arity,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, r: &Rat) -> Self {
        ConstrFn {
            points: self.points,
            arity: self.arity,
            values: self.values.iter().map(|v| v * r).collect(),
        }
    }

    /// The integral against the counting measure — at dimension 0 this is
    /// the pushforward to a point.
    pub fn integral(&self) -> Rat {
        let mut acc = Rat::zero();
        for v in &self.values {
            acc += v;
        }
        acc
    }

    /// First tuple (in encoding order) where the two functions differ.
    pub fn first_difference(&self, other: &Self) -> Result<Option<Mismatch>> {
        self.compat(other)?;
        for (i, (a, b)) in self.values.iter().zip(&other.values).enumerate() {
            if a != b {
                let mut t = vec![0usize; self.arity];
                decode(self.points, i, &mut t);
                return Ok(Some(Mismatch {
                    tuple: t,
                    lhs: a.clone(),
                    rhs: b.clone(),
                }));
            }
        }
        Ok(None)
    }

    /// Pushforward of a function on `X` along a map of finite sets
    /// `f: X → Y` (fiberwise sums).
    pub fn pushforward(&self, f: &[usize], target_points: usize) -> Result<Self> {
        if self.arity != 1 {
            return Err(Error::Invalid(
                "pushforward is implemented for functions on X itself".into(),
            ));
        }
        if f.len() != self.points || f.iter().any(|&y| y >= target_points) {
            return Err(Error::SizeMismatch(f.len(), self.points));
        }
        let mut out = ConstrFn::zero(target_points, 1);
        for (x, v) in self.values.iter().enumerate() {
            out.values[f[x]] = &out.values[f[x]] + v;
        }
        Ok(out)
    }
}

fn decode(points: usize, mut idx: usize, out: &mut [usize]) {
    for slot in out.iter_mut() {
        *slot = idx % points;
        idx /= points;
    }
}

/// Is the tuple fixed by the permutation action `t ↦ (t_{σ^{-1}(i)})_i`?
fn tuple_fixed_by_perm(sigma: &Permutation, t: &[usize]) -> bool {
    (0..t.len()).all(|i| t[sigma.apply(i)] == t[i])
}

/// Is the tuple fixed by `(ḡ, σ)` acting by `x ↦ (g_i · x_{σ^{-1}(i)})_i`?
fn tuple_fixed_by_wreath(x: &GSet, w: &WreathElement, t: &[usize]) -> bool {
    (0..t.len()).all(|i| {
        let j = w.sigma.apply(i);
        x.act(w.gbar[j], t[i]) == t[j]
    })
}

/// Indicator of the subset of `X^n` fixed by every listed permutation
/// (equivalently, by the subgroup they generate).
pub fn fixed_indicator_sym(points: usize, n: usize, perms: &[&Permutation]) -> ConstrFn {
    ConstrFn::indicator(points, n, |t| {
        perms.iter().all(|p| tuple_fixed_by_perm(p, t))
    })
}

/// Indicator of the subset of `X^n` fixed by every listed wreath element.
pub fn fixed_indicator_wreath(x: &GSet, n: usize, elems: &[&WreathElement]) -> ConstrFn {
    ConstrFn::indicator(x.points(), n, |t| {
        elems.iter().all(|w| tuple_fixed_by_wreath(x, w, t))
    })
}

/// The canonical function `(1/|G|) Σ_{ρ∈Hom(A,G)} 1_{X^{ρ(A)}}`. Every value
/// is also recomputed as `|Hom(A, Stab_G(x))|/|G|` and the two must agree.
pub fn canonical_function(x: &GSet, a: &GroupSpec, budget: Budget) -> Result<ConstrFn> {
    let pres = a.presentation().map_err(|_| Error::UnsupportedGroup {
        op: "canonical_function",
        group: a.to_string(),
    })?;
    let mut counts = vec![0u64; x.points()];
    for_each_hom(&pres, x.group(), budget, |images| {
        for (p, c) in counts.iter_mut().enumerate() {
            if images.iter().all(|&g| x.act(g, p) == p) {
                *c += 1;
            }
        }
    })?;
    let order = Rat::from(x.group().order() as u64);
    let mut out = ConstrFn::zero(x.points(), 1);
    for (p, &c) in counts.iter().enumerate() {
        out.values[p] = Rat::from(c) / order.clone();
    }
    // independent route: the stabilizer formula, point by point
    for p in 0..x.points() {
        let stab = x.stabilizer(p)?;
        let h = hom_count_into(a, &stab, budget)?;
        let via_stab = Rat::from(h) / order.clone();
        assert_eq!(
            out.values[p], via_stab,
            "canonical function at point {p} disagrees with |Hom(A,Stab)|/|G|"
        );
    }
    Ok(out)
}

/// The concrete index-`r` canonical class `Σ_{B ∈ Ω_A(r)} 1^{(B)}_{X/G}` for
/// the families where all index-`r` subgroups are isomorphic:
/// `j_r(A) · 1^{(B_r)}_{X/G}`.
pub fn canonical_index_sum(
    x: &GSet,
    a: &GroupSpec,
    r: usize,
    budget: Budget,
) -> Result<ConstrFn> {
    let jseq = j_sequence(a, r, budget)?;
    if jseq.j(r) == 0 {
        return Ok(ConstrFn::zero(x.points(), 1));
    }
    let b = index_subgroup_type(a, r)?.expect("j_r > 0 implies a subgroup");
    Ok(canonical_function(x, &b, budget)?.scale(&Rat::from(jseq.j(r))))
}

/// Plain symmetrized product
/// `(α⊙β)(t) = (1/(m+n)!) Σ_{σ∈S_{m+n}} α(t_{σ(1)},…)·β(…,t_{σ(m+n)})`.
pub fn odot_plain(a: &ConstrFn, b: &ConstrFn) -> Result<ConstrFn> {
    if a.points != b.points {
        return Err(Error::SizeMismatch(a.points, b.points));
    }
    let (m, n) = (a.arity, b.arity);
    let total = m + n;
    let points = a.points;
    let sym = FiniteGroup::symmetric(total);
    let mut out = ConstrFn::zero(points, total);
    let mut t = vec![0usize; total];
    for sigma in sym.elements() {
        for idx in 0..out.values.len() {
            decode(points, idx, &mut t);
            let mut ai = 0usize;
            for i in (0..m).rev() {
                ai = ai * points + t[sigma.apply(i)];
            }
            let mut bi = 0usize;
            for i in (m..total).rev() {
                bi = bi * points + t[sigma.apply(i)];
            }
            let prod = &a.values[ai] * &b.values[bi];
            if !prod.is_zero() {
                out.values[idx] += &prod;
            }
        }
    }
    let norm = Rat::from_biguint(&factorial(total)).recip()?;
    Ok(out.scale(&norm))
}

/// Wreath symmetrized product: additionally averages over `G^{m+n}`,
/// `(α⊙β)(t) = (1/(|G|^{m+n}(m+n)!)) Σ_{(ḡ,σ)} (ḡ,σ)_*(α×β)(t)`.
pub fn odot_wreath(x: &GSet, a: &ConstrFn, b: &ConstrFn) -> Result<ConstrFn> {
    if a.points != b.points || a.points != x.points() {
        return Err(Error::SizeMismatch(a.points, b.points));
    }
    let (m, n) = (a.arity, b.arity);
    let total = m + n;
    let points = x.points();
    let order = x.group().order();
    let sym = FiniteGroup::symmetric(total);
    let mut out = ConstrFn::zero(points, total);
    let mut t = vec![0usize; total];
    let mut z = vec![0usize; total];
    let mut gbar = vec![0usize; total];
    for sigma in sym.elements() {
        loop {
            // current ḡ: pulled-back coordinates z_i = g_{σ(i)}^{-1}·t_{σ(i)}
            for idx in 0..out.values.len() {
                decode(points, idx, &mut t);
                for i in 0..total {
                    let j = sigma.apply(i);
                    z[i] = x.act(x.group().inv(gbar[j]), t[j]);
                }
                let mut ai = 0usize;
                for i in (0..m).rev() {
                    ai = ai * points + z[i];
                }
                let mut bi = 0usize;
                for i in (m..total).rev() {
                    bi = bi * points + z[i];
                }
                let prod = &a.values[ai] * &b.values[bi];
                if !prod.is_zero() {
                    out.values[idx] += &prod;
                }
            }
            // next ḡ in mixed radix
            let mut carry = 0;
            while carry < total {
                gbar[carry] += 1;
                if gbar[carry] < order {
                    break;
                }
                gbar[carry] = 0;
                carry += 1;
            }
            if carry == total {
                break;
            }
        }
    }
    let norm = (Rat::from_biguint(&factorial(total))
        * Rat::from(order as u64).pow(total as i32)?)
    .recip()?;
    Ok(out.scale(&norm))
}

/// `D^n(α)` without a group: push α onto the diagonal of `X^n`.
pub fn diagonal_plain(a: &ConstrFn, n: usize) -> Result<ConstrFn> {
    if a.arity != 1 {
        return Err(Error::Invalid("diagonal takes a function on X".into()));
    }
    if n == 0 {
        return Err(Error::Invalid("diagonal operators have order n ≥ 1".into()));
    }
    let mut out = ConstrFn::zero(a.points, n);
    let mut t = vec![0usize; n];
    for idx in 0..out.values.len() {
        decode(a.points, idx, &mut t);
        if t.iter().all(|&c| c == t[0]) {
            out.values[idx] = a.values[t[0]].clone();
        }
    }
    Ok(out)
}

/// The `G`-equivariant diagonal
/// `D^n(α) = (1/(|G|^n n!)) Σ_{(ḡ,σ)} (ḡ,σ)_*(Δ_*α)`, computed literally
/// from that full average.
pub fn diagonal_wreath(x: &GSet, a: &ConstrFn, n: usize) -> Result<ConstrFn> {
    let delta = diagonal_plain(a, n)?;
    let points = x.points();
    let order = x.group().order();
    let sym = FiniteGroup::symmetric(n);
    let mut out = ConstrFn::zero(points, n);
    let mut t = vec![0usize; n];
    let mut z = vec![0usize; n];
    let mut gbar = vec![0usize; n];
    for sigma in sym.elements() {
        loop {
            for idx in 0..out.values.len() {
                decode(points, idx, &mut t);
                for i in 0..n {
                    let j = sigma.apply(i);
                    z[i] = x.act(x.group().inv(gbar[j]), t[j]);
                }
                let v = &delta.values[delta.encode(&z)];
                if !v.is_zero() {
                    out.values[idx] += v;
                }
            }
            let mut carry = 0;
            while carry < n {
                gbar[carry] += 1;
                if gbar[carry] < order {
                    break;
                }
                gbar[carry] = 0;
                carry += 1;
            }
            if carry == n {
                break;
            }
        }
    }
    let norm =
        (Rat::from_biguint(&factorial(n)) * Rat::from(order as u64).pow(n as i32)?).recip()?;
    Ok(out.scale(&norm))
}

/// The same operator via the product-only average
/// `(1/|G|^n) Σ_{ḡ∈G^n} ḡ_*(Δ_*α)` — the diagonal is `S_n`-stable, so this
/// must agree with the full average (tested, never substituted).
pub fn diagonal_wreath_product_avg(x: &GSet, a: &ConstrFn, n: usize) -> Result<ConstrFn> {
    let delta = diagonal_plain(a, n)?;
    let points = x.points();
    let order = x.group().order();
    let mut out = ConstrFn::zero(points, n);
    let mut t = vec![0usize; n];
    let mut z = vec![0usize; n];
    let mut gbar = vec![0usize; n];
    loop {
        for idx in 0..out.values.len() {
            decode(points, idx, &mut t);
            for i in 0..n {
                z[i] = x.act(x.group().inv(gbar[i]), t[i]);
            }
            let v = &delta.values[delta.encode(&z)];
            if !v.is_zero() {
                out.values[idx] += v;
            }
        }
        let mut carry = 0;
        while carry < n {
            gbar[carry] += 1;
            if gbar[carry] < order {
                break;
            }
            gbar[carry] = 0;
            carry += 1;
        }
        if carry == n {
            break;
        }
    }
    let norm = Rat::from(order as u64).pow(n as i32)?.recip()?;
    Ok(out.scale(&norm))
}

fn eval_slice(
    elem: &DiagElement,
    n: usize,
    values: &BTreeMap<BaseClass, ConstrFn>,
    points: usize,
    mut diag: impl FnMut(&ConstrFn, usize) -> Result<ConstrFn>,
    mut odot: impl FnMut(&ConstrFn, &ConstrFn) -> Result<ConstrFn>,
) -> Result<ConstrFn> {
    let mut out = ConstrFn::zero(points, n);
    for (mono, coeff) in elem.weight_slice(n).terms() {
        let mut factors: Vec<ConstrFn> = Vec::new();
        for (g, e) in mono.factors() {
            let base = values
                .get(&g.base)
                .ok_or_else(|| Error::UnknownBaseClass(g.base.name().to_string()))?;
            let d = diag(base, g.k)?;
            for _ in 0..*e {
                factors.push(d.clone());
            }
        }
        let concrete = match factors.split_first() {
            None => ConstrFn::constant(points, 0, &Rat::one()),
            Some((first, rest)) => {
                let mut acc = first.clone();
                for f in rest {
                    acc = odot(&acc, f)?;
                }
                acc
            }
        };
        out = out.add(&concrete.scale(coeff))?;
    }
    Ok(out)
}

/// Evaluate the weight-`n` slice of a symbolic element in the plain
/// function algebra: `D^k ↦ diagonal_plain`, `⊙ ↦ odot_plain`, symbols via
/// `values`.
pub fn eval_slice_plain(
    elem: &DiagElement,
    n: usize,
    values: &BTreeMap<BaseClass, ConstrFn>,
    points: usize,
) -> Result<ConstrFn> {
    eval_slice(elem, n, values, points, diagonal_plain, odot_plain)
}

/// Evaluate the weight-`n` slice with the `G`-equivariant operators.
pub fn eval_slice_wreath(
    x: &GSet,
    elem: &DiagElement,
    n: usize,
    values: &BTreeMap<BaseClass, ConstrFn>,
) -> Result<ConstrFn> {
    eval_slice(
        elem,
        n,
        values,
        x.points(),
        |a, k| diagonal_wreath(x, a, k),
        |a, b| odot_wreath(x, a, b),
    )
}

/// A pointwise discrepancy: the first differing tuple and both values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub tuple: Vec<usize>,
    pub lhs: Rat,
    pub rhs: Rat,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub n: usize,
    pub ok: bool,
    /// Integral of the enumerated side (the orbifold Euler characteristic
    /// of the n-th quotient at dimension 0).
    pub integral: Rat,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<Mismatch>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub source: String,
    pub group: String,
    pub points: usize,
    pub trunc: usize,
    pub cases: Vec<CaseReport>,
    /// Integrals against the degree-specialized engine series.
    pub integral_series_ok: bool,
    /// For free-abelian sources: the Euler-product form of the integral
    /// sequence (the orbifold-Euler-characteristic specialization).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub euler_product_ok: Option<bool>,
    pub ok: bool,
}

impl VerifyReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serialization cannot fail")
    }
}

/// Check the symmetric-product identity on a bare finite set: for each
/// `n ≤ nmax` the canonical function `(1/n!) Σ_ρ 1_{(X^n)^{ρ(A)}}` on `X^n`
/// must equal the weight-`n` slice of `exp(Σ_r j_r(A)/r z^r D^r(1_X))`
/// evaluated with the concrete diagonal and ⊙.
pub fn verify_symmetric(
    a: &GroupSpec,
    points: usize,
    nmax: usize,
    budget: Budget,
) -> Result<VerifyReport> {
    let pres = a.presentation().map_err(|_| Error::UnsupportedGroup {
        op: "verify_symmetric",
        group: a.to_string(),
    })?;
    let jseq = j_sequence(a, nmax.max(1), budget)?;
    let symbol = BaseClass::new("a")?;
    let rhs_elem = dey_wohlfahrt_rhs(&jseq, &BaseElement::class(symbol.clone()), nmax)?;
    let values: BTreeMap<BaseClass, ConstrFn> =
        [(symbol.clone(), ConstrFn::constant(points, 1, &Rat::one()))].into();
    let spec_series =
        rhs_elem.degree_specialize(&[(symbol, Rat::from(points as u64))].into())?;

    let mut cases = Vec::new();
    let mut integral_series_ok = true;
    for n in 0..=nmax {
        let sym = FiniteGroup::symmetric(n);
        let mut counts = vec![0u64; space_size(points, n)];
        let mut t = vec![0usize; n];
        for_each_hom(&pres, &sym, budget, |images| {
            let perms: Vec<&Permutation> = images.iter().map(|&i| sym.element(i)).collect();
            for (idx, c) in counts.iter_mut().enumerate() {
                decode(points, idx, &mut t);
                if perms.iter().all(|p| tuple_fixed_by_perm(p, &t)) {
                    *c += 1;
                }
            }
        })?;
        let norm = Rat::from_biguint(&factorial(n)).recip()?;
        let mut lhs = ConstrFn::zero(points, n);
        for (idx, &c) in counts.iter().enumerate() {
            if c > 0 {
                lhs.values[idx] = &Rat::from(c) * &norm;
            }
        }
        let rhs = eval_slice_plain(&rhs_elem, n, &values, points)?;
        let mismatch = lhs.first_difference(&rhs)?;
        let integral = lhs.integral();
        if &integral != spec_series.coeff(n) {
            integral_series_ok = false;
        }
        cases.push(CaseReport {
            n,
            ok: mismatch.is_none(),
            integral,
            mismatch,
        });
    }
    let ok = cases.iter().all(|c| c.ok) && integral_series_ok;
    Ok(VerifyReport {
        source: a.to_string(),
        group: "1".to_string(),
        points,
        trunc: nmax,
        cases,
        integral_series_ok,
        euler_product_ok: None,
        ok,
    })
}

/// Check the wreath-product identity on a finite `G`-set: for each
/// `n ≤ nmax` the canonical function `(1/(|G|^n n!)) Σ_ρ 1_{(X^n)^{ρ(A)}}`
/// under `G≀S_n` must equal the weight-`n` slice of
/// `exp(Σ_r (1/r) z^r D^r(1^{(A;r)}_{X/G}))` evaluated with the equivariant
/// operators. For free-abelian sources the integral sequence is additionally
/// compared against its Euler-product form.
pub fn verify_wreath(a: &GroupSpec, x: &GSet, nmax: usize, budget: Budget) -> Result<VerifyReport> {
    let pres = a.presentation().map_err(|_| Error::UnsupportedGroup {
        op: "verify_wreath",
        group: a.to_string(),
    })?;
    let assignment = wreath_base_assignment(a, nmax.max(1), budget)?;
    let rhs_elem = dey_wohlfahrt_wreath_rhs(&assignment, nmax)?;
    let mut values: BTreeMap<BaseClass, ConstrFn> = BTreeMap::new();
    let mut value_integrals: BTreeMap<BaseClass, Rat> = BTreeMap::new();
    for (&r, beta) in &assignment {
        let b = index_subgroup_type(a, r)?.expect("assignment keys have subgroups");
        for (symbol, _) in beta.terms() {
            if !values.contains_key(symbol) {
                let concrete = canonical_function(x, &b, budget)?;
                value_integrals.insert(symbol.clone(), concrete.integral());
                values.insert(symbol.clone(), concrete);
            }
        }
    }
    let spec_series = rhs_elem.degree_specialize(&value_integrals)?;

    let order = x.group().order();
    let mut cases = Vec::new();
    let mut integral_series_ok = true;
    for n in 0..=nmax {
        let wg = WreathGroup::new(x.group(), n, DEFAULT_GROUP_CAP)?;
        let mut counts = vec![0u64; space_size(x.points(), n)];
        let mut t = vec![0usize; n];
        for_each_hom(&pres, &wg, budget, |images| {
            let elems: Vec<&WreathElement> = images.iter().map(|&i| wg.element(i)).collect();
            for (idx, c) in counts.iter_mut().enumerate() {
                decode(x.points(), idx, &mut t);
                if elems.iter().all(|w| tuple_fixed_by_wreath(x, w, &t)) {
                    *c += 1;
                }
            }
        })?;
        let norm = (Rat::from_biguint(&factorial(n))
            * Rat::from(order as u64).pow(n as i32)?)
        .recip()?;
        let mut lhs = ConstrFn::zero(x.points(), n);
        for (idx, &c) in counts.iter().enumerate() {
            if c > 0 {
                lhs.values[idx] = &Rat::from(c) * &norm;
            }
        }
        let rhs = eval_slice_wreath(x, &rhs_elem, n, &values)?;
        let mismatch = lhs.first_difference(&rhs)?;
        let integral = lhs.integral();
        if &integral != spec_series.coeff(n) {
            integral_series_ok = false;
        }
        cases.push(CaseReport {
            n,
            ok: mismatch.is_none(),
            integral,
            mismatch,
        });
    }

    // Euler-product form of the integral sequence for A = Z^m: \
    // Σ_n χ_m(X^n;G_n) z^n = ∏_r (1−z^r)^{−j(m−1;r)·χ_m(X;G)}
    let euler_product_ok = if let GroupSpec::FreeAbelian(m @ 1..) = a {
        let chi_m = canonical_function(x, a, budget)?.integral();
        let lower = crate::grp::free_abelian_j(m - 1, nmax.max(1))?;
        let exponents: BTreeMap<usize, Rat> = (1..=nmax)
            .filter(|&r| lower[r - 1] > 0)
            .map(|r| (r, &Rat::from(lower[r - 1]) * &chi_m))
            .collect();
        let euler = Series::euler_product(&exponents, nmax)?;
        Some(
            cases
                .iter()
                .all(|c| &c.integral == euler.coeff(c.n)),
        )
    } else {
        None
    };

    let ok = cases.iter().all(|c| c.ok)
        && integral_series_ok
        && euler_product_ok.unwrap_or(true);
    Ok(VerifyReport {
        source: a.to_string(),
        group: x.group().label().to_string(),
        points: x.points(),
        trunc: nmax,
        cases,
        integral_series_ok,
        euler_product_ok,
        ok,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct IndexCase {
    pub r: usize,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<Mismatch>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TypeCase {
    pub n: usize,
    pub cycle_type: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<Mismatch>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub source: String,
    pub group: String,
    pub points: usize,
    pub rmax: usize,
    pub per_index: Vec<IndexCase>,
    pub per_type: Vec<TypeCase>,
    pub ok: bool,
}

impl LemmaReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serialization cannot fail")
    }
}

/// `n!/∏_r (r!)^{c_r} c_r!` — the number of set partitions of shape `c`.
fn orbit_partition_count(c: &CycleType) -> Result<Rat> {
    let mut den = Rat::one();
    for r in 1..=c.weight() {
        let cr = c.count(r);
        if cr > 0 {
            den = den
                * Rat::from_biguint(&factorial(r)).pow(cr as i32)?
                * Rat::from_biguint(&factorial(cr));
        }
    }
    Ok(Rat::from_biguint(&factorial(c.weight())) / den)
}

/// The two identities behind the cycle-type expansion over a bare set:
/// `θ_r = (r−1)!·j_r(A)·1_{ΔX^r}` and, per type,
/// `Σ_{type-c homs} 1_fixed = (n!/∏(r!)^{c_r}c_r!)·⊙_r θ_r^{c_r}`.
pub fn lemma_dey_check(
    a: &GroupSpec,
    points: usize,
    nmax: usize,
    budget: Budget,
) -> Result<LemmaReport> {
    let pres = a.presentation().map_err(|_| Error::UnsupportedGroup {
        op: "lemma_dey_check",
        group: a.to_string(),
    })?;
    let jseq = j_sequence(a, nmax.max(1), budget)?;
    let one_x = ConstrFn::constant(points, 1, &Rat::one());

    let mut thetas: Vec<ConstrFn> = Vec::new();
    let mut per_index = Vec::new();
    for r in 1..=nmax {
        let sym = FiniteGroup::symmetric(r);
        let mut counts = vec![0u64; space_size(points, r)];
        let mut t = vec![0usize; r];
        for_each_hom(&pres, &sym, budget, |images| {
            let perms: Vec<&Permutation> = images.iter().map(|&i| sym.element(i)).collect();
            if orbit_sizes(r, &perms).len() != 1 {
                return;
            }
            for (idx, c) in counts.iter_mut().enumerate() {
                decode(points, idx, &mut t);
                if perms.iter().all(|p| tuple_fixed_by_perm(p, &t)) {
                    *c += 1;
                }
            }
        })?;
        let mut theta = ConstrFn::zero(points, r);
        for (idx, &c) in counts.iter().enumerate() {
            if c > 0 {
                theta.values[idx] = Rat::from(c);
            }
        }
        let coeff = Rat::from_biguint(&factorial(r - 1)) * Rat::from(jseq.j(r));
        let rhs = diagonal_plain(&one_x, r)?.scale(&coeff);
        let mismatch = theta.first_difference(&rhs)?;
        per_index.push(IndexCase {
            r,
            ok: mismatch.is_none(),
            mismatch,
        });
        thetas.push(theta);
    }

    let mut per_type = Vec::new();
    for n in 1..=nmax {
        let sym = FiniteGroup::symmetric(n);
        let mut by_type: BTreeMap<CycleType, Vec<u64>> = BTreeMap::new();
        let size = space_size(points, n);
        let mut t = vec![0usize; n];
        for_each_hom(&pres, &sym, budget, |images| {
            let perms: Vec<&Permutation> = images.iter().map(|&i| sym.element(i)).collect();
            let ty = CycleType::from_orbit_sizes(&orbit_sizes(n, &perms), n);
            let counts = by_type.entry(ty).or_insert_with(|| vec![0u64; size]);
            for (idx, c) in counts.iter_mut().enumerate() {
                decode(points, idx, &mut t);
                if perms.iter().all(|p| tuple_fixed_by_perm(p, &t)) {
                    *c += 1;
                }
            }
        })?;
        for c in CycleType::all_of_weight(n) {
            let mut lhs = ConstrFn::zero(points, n);
            if let Some(counts) = by_type.get(&c) {
                for (idx, &v) in counts.iter().enumerate() {
                    if v > 0 {
                        lhs.values[idx] = Rat::from(v);
                    }
                }
            }
            let mut factors: Vec<&ConstrFn> = Vec::new();
            for r in 1..=n {
                for _ in 0..c.count(r) {
                    factors.push(&thetas[r - 1]);
                }
            }
            let product = match factors.split_first() {
                None => ConstrFn::constant(points, 0, &Rat::one()),
                Some((first, rest)) => {
                    let mut acc = (*first).clone();
                    for f in rest {
                        acc = odot_plain(&acc, f)?;
                    }
                    acc
                }
            };
            let rhs = product.scale(&orbit_partition_count(&c)?);
            let mismatch = lhs.first_difference(&rhs)?;
            per_type.push(TypeCase {
                n,
                cycle_type: c.to_string(),
                ok: mismatch.is_none(),
                mismatch,
            });
        }
    }

    let ok = per_index.iter().all(|c| c.ok) && per_type.iter().all(|c| c.ok);
    Ok(LemmaReport {
        source: a.to_string(),
        group: "1".to_string(),
        points,
        rmax: nmax,
        per_index,
        per_type,
        ok,
    })
}

/// The wreath versions: `(1/|G|^r)·Θ_r = (r−1)!·D^r(1^{(A;r)}_{X/G})` with
/// `Θ_r` summed over homomorphisms whose permutation part is transitive,
/// and the per-type product identity with the wreath ⊙.
pub fn lemma_deyg_check(
    a: &GroupSpec,
    x: &GSet,
    nmax: usize,
    budget: Budget,
) -> Result<LemmaReport> {
    let pres = a.presentation().map_err(|_| Error::UnsupportedGroup {
        op: "lemma_deyg_check",
        group: a.to_string(),
    })?;
    let order = x.group().order();
    let points = x.points();

    let mut thetas: Vec<ConstrFn> = Vec::new();
    let mut per_index = Vec::new();
    for r in 1..=nmax {
        let wg = WreathGroup::new(x.group(), r, DEFAULT_GROUP_CAP)?;
        let mut counts = vec![0u64; space_size(points, r)];
        let mut t = vec![0usize; r];
        for_each_hom(&pres, &wg, budget, |images| {
            let elems: Vec<&WreathElement> = images.iter().map(|&i| wg.element(i)).collect();
            let sigmas: Vec<&Permutation> = elems.iter().map(|w| &w.sigma).collect();
            if orbit_sizes(r, &sigmas).len() != 1 {
                return;
            }
            for (idx, c) in counts.iter_mut().enumerate() {
                decode(points, idx, &mut t);
                if elems.iter().all(|w| tuple_fixed_by_wreath(x, w, &t)) {
                    *c += 1;
                }
            }
        })?;
        let mut theta = ConstrFn::zero(points, r);
        for (idx, &c) in counts.iter().enumerate() {
            if c > 0 {
                theta.values[idx] = Rat::from(c);
            }
        }
        let lhs = theta.scale(&Rat::from(order as u64).pow(r as i32)?.recip()?);
        let index_sum = canonical_index_sum(x, a, r, budget)?;
        let rhs = diagonal_wreath(x, &index_sum, r)?
            .scale(&Rat::from_biguint(&factorial(r - 1)));
        let mismatch = lhs.first_difference(&rhs)?;
        per_index.push(IndexCase {
            r,
            ok: mismatch.is_none(),
            mismatch,
        });
        thetas.push(theta);
    }

    let mut per_type = Vec::new();
    for n in 1..=nmax {
        let wg = WreathGroup::new(x.group(), n, DEFAULT_GROUP_CAP)?;
        let mut by_type: BTreeMap<CycleType, Vec<u64>> = BTreeMap::new();
        let size = space_size(points, n);
        let mut t = vec![0usize; n];
        for_each_hom(&pres, &wg, budget, |images| {
            let elems: Vec<&WreathElement> = images.iter().map(|&i| wg.element(i)).collect();
            let sigmas: Vec<&Permutation> = elems.iter().map(|w| &w.sigma).collect();
            let ty = CycleType::from_orbit_sizes(&orbit_sizes(n, &sigmas), n);
            let counts = by_type.entry(ty).or_insert_with(|| vec![0u64; size]);
            for (idx, c) in counts.iter_mut().enumerate() {
                decode(points, idx, &mut t);
                if elems.iter().all(|w| tuple_fixed_by_wreath(x, w, &t)) {
                    *c += 1;
                }
            }
        })?;
        for c in CycleType::all_of_weight(n) {
            let mut lhs = ConstrFn::zero(points, n);
            if let Some(counts) = by_type.get(&c) {
                for (idx, &v) in counts.iter().enumerate() {
                    if v > 0 {
                        lhs.values[idx] = Rat::from(v);
                    }
                }
            }
            let mut factors: Vec<&ConstrFn> = Vec::new();
            for r in 1..=n {
                for _ in 0..c.count(r) {
                    factors.push(&thetas[r - 1]);
                }
            }
            let product = match factors.split_first() {
                None => ConstrFn::constant(points, 0, &Rat::one()),
                Some((first, rest)) => {
                    let mut acc = (*first).clone();
                    for f in rest {
                        acc = odot_wreath(x, &acc, f)?;
                    }
                    acc
                }
            };
            let rhs = product.scale(&orbit_partition_count(&c)?);
            let mismatch = lhs.first_difference(&rhs)?;
            per_type.push(TypeCase {
                n,
                cycle_type: c.to_string(),
                ok: mismatch.is_none(),
                mismatch,
            });
        }
    }

    let ok = per_index.iter().all(|c| c.ok) && per_type.iter().all(|c| c.ok);
    Ok(LemmaReport {
        source: a.to_string(),
        group: x.group().label().to_string(),
        points,
        rmax: nmax,
        per_index,
        per_type,
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap_gset() -> GSet {
        // Z/2 exchanging the two points of X = {0, 1}
        GSet::natural(FiniteGroup::cyclic(2)).unwrap()
    }

    fn swap_first_two() -> GSet {
        // Z/2 on three points, fixing the last
        GSet::from_generator_tables(FiniteGroup::cyclic(2), 3, &[vec![1, 0, 2]]).unwrap()
    }

    /// Deterministic non-constant test function.
    fn ragged(points: usize, arity: usize, seed: i64) -> ConstrFn {
        let mut f = ConstrFn::zero(points, arity);
        for (i, v) in f.values.iter_mut().enumerate() {
            let k = seed + i as i64;
            *v = Rat::frac((k * k) % 7 - 3, 1 + (k % 3).abs());
        }
        f
    }

    #[test]
    fn gset_natural_s3_and_generator_tables() {
        let s3 = FiniteGroup::symmetric(3);
        let natural = GSet::natural(s3.clone()).unwrap();
        assert_eq!(natural.points(), 3);
        // the same action rebuilt from generator tables alone
        let gen_tables: Vec<Vec<usize>> = s3
            .generator_indices()
            .iter()
            .map(|&g| (0..3).map(|x| natural.act(g, x)).collect())
            .collect();
        let rebuilt = GSet::from_generator_tables(s3.clone(), 3, &gen_tables).unwrap();
        for g in 0..s3.order() {
            for x in 0..3 {
                assert_eq!(natural.act(g, x), rebuilt.act(g, x));
            }
        }
    }

    #[test]
    fn gset_rejects_bad_action() {
        let z2 = FiniteGroup::cyclic(2);
        // non-identity table for the identity element
        let bad = GSet::new(z2.clone(), 2, vec![vec![1, 0], vec![0, 1]]);
        assert!(matches!(bad, Err(Error::BadAction(_))));
        // tables that break the composition law: both elements act as a
        // 3-cycle on {0,1,2}, but the square of the generator is trivial
        let bad = GSet::new(z2, 3, vec![vec![0, 1, 2], vec![1, 2, 0]]);
        assert!(matches!(bad, Err(Error::BadAction(_))));
    }

    #[test]
    fn gset_orbits_and_stabilizers() {
        let x = swap_first_two();
        let (ids, count) = x.orbit_map();
        assert_eq!(count, 2);
        assert_eq!(ids[0], ids[1]);
        assert_ne!(ids[0], ids[2]);

        let s3 = GSet::natural(FiniteGroup::symmetric(3)).unwrap();
        assert_eq!(s3.stabilizer(0).unwrap().order(), 2);
        assert_eq!(x.stabilizer(2).unwrap().order(), 2);
        assert_eq!(x.stabilizer(0).unwrap().order(), 1);
    }

    #[test]
    fn gset_from_json_round_trip() {
        let x = GSet::from_json(
            r#"{"points": 3, "group": ["(1 2)"], "action": [[1, 0, 2]]}"#,
        )
        .unwrap();
        assert_eq!(x.points(), 3);
        assert_eq!(x.group().order(), 2);
        let reference = swap_first_two();
        for g in 0..2 {
            for p in 0..3 {
                assert_eq!(x.act(g, p), reference.act(g, p));
            }
        }
        assert!(GSet::from_json("{").is_err());
    }

    #[test]
    fn canonical_function_values() {
        // trivial source: the constant 1/|G|
        let x = GSet::natural(FiniteGroup::symmetric(3)).unwrap();
        let f = canonical_function(&x, &GroupSpec::Trivial, Budget::default()).unwrap();
        assert!(f.values().iter().all(|v| v == &Rat::frac(1, 6)));

        // free source: 1/|orbit| pointwise, pushing forward to 1 per orbit
        let f = canonical_function(&x, &GroupSpec::FreeAbelian(1), Budget::default()).unwrap();
        assert!(f.values().iter().all(|v| v == &Rat::frac(1, 3)));
        let (ids, n_orbits) = x.orbit_map();
        let pushed = f.pushforward(&ids, n_orbits).unwrap();
        assert!(pushed.values().iter().all(|v| v.is_one()));

        let y = swap_first_two();
        let f = canonical_function(&y, &GroupSpec::FreeAbelian(1), Budget::default()).unwrap();
        assert_eq!(f.value(&[0]), &Rat::frac(1, 2));
        assert_eq!(f.value(&[2]), &Rat::one());
        let (ids, n_orbits) = y.orbit_map();
        let pushed = f.pushforward(&ids, n_orbits).unwrap();
        assert!(pushed.values().iter().all(|v| v.is_one()));

        // two homomorphisms Z/2 → Z/2; only the trivial one fixes points
        let f = canonical_function(&swap_gset(), &GroupSpec::Cyclic(2), Budget::default())
            .unwrap();
        assert!(f.values().iter().all(|v| v == &Rat::frac(1, 2)));
    }

    #[test]
    fn fixed_indicators() {
        let swap = Permutation::parse("(1 2)", Some(2)).unwrap();
        let f = fixed_indicator_sym(2, 2, &[&swap]);
        assert_eq!(f.value(&[0, 0]), &Rat::one());
        assert_eq!(f.value(&[1, 1]), &Rat::one());
        assert_eq!(f.value(&[0, 1]), &Rat::zero());
        // no constraints: everything is fixed
        let all = fixed_indicator_sym(2, 2, &[]);
        assert!(all.values().iter().all(|v| v.is_one()));

        // ((s, s), (1 2)) fixes exactly the antidiagonal of the swap action
        let x = swap_gset();
        let w = WreathElement {
            gbar: vec![1, 1],
            sigma: swap,
        };
        let f = fixed_indicator_wreath(&x, 2, &[&w]);
        assert_eq!(f.value(&[0, 1]), &Rat::one());
        assert_eq!(f.value(&[1, 0]), &Rat::one());
        assert_eq!(f.value(&[0, 0]), &Rat::zero());
    }

    #[test]
    fn odot_plain_basics() {
        let one = ConstrFn::constant(2, 1, &Rat::one());
        let p = odot_plain(&one, &one).unwrap();
        assert!(p.values().iter().all(|v| v.is_one()));

        let a = ragged(2, 1, 3);
        let b = ragged(2, 2, 11);
        let ab = odot_plain(&a, &b).unwrap();
        let ba = odot_plain(&b, &a).unwrap();
        assert_eq!(ab.first_difference(&ba).unwrap(), None);
        assert_eq!(ab.integral(), a.integral() * b.integral());
    }

    #[test]
    fn odot_wreath_with_trivial_group_matches_plain() {
        let x = GSet::natural(FiniteGroup::trivial(2)).unwrap();
        let a = ragged(2, 1, 5);
        let b = ragged(2, 2, 2);
        let plain = odot_plain(&a, &b).unwrap();
        let wreath = odot_wreath(&x, &a, &b).unwrap();
        assert_eq!(plain.first_difference(&wreath).unwrap(), None);
    }

    #[test]
    fn diagonal_operators() {
        let a = ragged(2, 1, 7);
        let d1 = diagonal_plain(&a, 1).unwrap();
        assert_eq!(d1.first_difference(&a).unwrap(), None);
        let d2 = diagonal_plain(&a, 2).unwrap();
        assert_eq!(d2.value(&[0, 0]), a.value(&[0]));
        assert_eq!(d2.value(&[0, 1]), &Rat::zero());
        assert!(diagonal_plain(&a, 0).is_err());

        // trivial group: the equivariant diagonal collapses to the plain one
        let t = GSet::natural(FiniteGroup::trivial(2)).unwrap();
        let dw = diagonal_wreath(&t, &a, 2).unwrap();
        assert_eq!(dw.first_difference(&d2).unwrap(), None);

        // full wreath average vs the product-only average (the diagonal is
        // symmetric, so these must agree)
        let x = swap_gset();
        for n in 1..=3 {
            let full = diagonal_wreath(&x, &a, n).unwrap();
            let prod = diagonal_wreath_product_avg(&x, &a, n).unwrap();
            assert_eq!(full.first_difference(&prod).unwrap(), None);
        }
    }

    #[test]
    fn pushforward_composes() {
        let a = ragged(4, 1, 1);
        // 4 → 2 → 1 in two hops equals the integral in one
        let f = vec![0, 0, 1, 1];
        let g = vec![0, 0];
        let two_step = a.pushforward(&f, 2).unwrap().pushforward(&g, 1).unwrap();
        assert_eq!(two_step.value(&[0]), &a.integral());
        let composed: Vec<usize> = f.iter().map(|&y| g[y]).collect();
        let one_step = a.pushforward(&composed, 1).unwrap();
        assert_eq!(two_step.first_difference(&one_step).unwrap(), None);
    }

    #[test]
    fn verify_symmetric_free_source_two_points() {
        let report =
            verify_symmetric(&GroupSpec::FreeAbelian(1), 2, 3, Budget::default()).unwrap();
        assert!(report.ok, "{:?}", report);
        let integrals: Vec<String> =
            report.cases.iter().map(|c| c.integral.to_string()).collect();
        // multisets of size n from two points
        assert_eq!(integrals, vec!["1", "2", "3", "4"]);
    }

    #[test]
    fn verify_symmetric_rank_two_two_points() {
        let report =
            verify_symmetric(&GroupSpec::FreeAbelian(2), 2, 3, Budget::default()).unwrap();
        assert!(report.ok, "{:?}", report);
    }

    #[test]
    fn verify_symmetric_torsion_source() {
        let report = verify_symmetric(&GroupSpec::Cyclic(2), 2, 3, Budget::default()).unwrap();
        assert!(report.ok, "{:?}", report);
    }

    #[test]
    fn verify_wreath_point_rank_two() {
        let x = GSet::point(FiniteGroup::cyclic(2)).unwrap();
        let report =
            verify_wreath(&GroupSpec::FreeAbelian(2), &x, 2, Budget::default()).unwrap();
        assert!(report.ok, "{:?}", report);
        let integrals: Vec<String> =
            report.cases.iter().map(|c| c.integral.to_string()).collect();
        // commuting pairs in Z/2 ≀ S_n, divided by the group order
        assert_eq!(integrals, vec!["1", "2", "5"]);
        assert_eq!(report.euler_product_ok, Some(true));
    }

    #[test]
    fn verify_wreath_swap_action() {
        let report = verify_wreath(
            &GroupSpec::FreeAbelian(1),
            &swap_gset(),
            2,
            Budget::default(),
        )
        .unwrap();
        assert!(report.ok, "{:?}", report);
        assert_eq!(report.euler_product_ok, Some(true));
    }

    #[test]
    fn verify_wreath_trivial_group_reduces_to_symmetric() {
        let x = GSet::natural(FiniteGroup::trivial(2)).unwrap();
        let wreath =
            verify_wreath(&GroupSpec::Cyclic(3), &x, 3, Budget::default()).unwrap();
        let plain = verify_symmetric(&GroupSpec::Cyclic(3), 2, 3, Budget::default()).unwrap();
        assert!(wreath.ok && plain.ok);
        for (w, p) in wreath.cases.iter().zip(&plain.cases) {
            assert_eq!(w.integral, p.integral);
        }
    }

    #[test]
    fn lemma_dey_two_points() {
        let report =
            lemma_dey_check(&GroupSpec::FreeAbelian(1), 2, 3, Budget::default()).unwrap();
        assert!(report.ok, "{:?}", report);
        assert_eq!(report.per_index.len(), 3);
        // one type case per partition of 1, 2, 3
        assert_eq!(report.per_type.len(), 1 + 2 + 3);
    }

    #[test]
    fn lemma_deyg_swap_action() {
        for a in [GroupSpec::FreeAbelian(1), GroupSpec::Cyclic(2)] {
            let report = lemma_deyg_check(&a, &swap_gset(), 2, Budget::default()).unwrap();
            assert!(report.ok, "{:?}", report);
        }
    }

    #[test]
    fn transitive_wreath_hom_count_matches_subgroup_formula() {
        // homomorphisms Z² → Z/2 ≀ S₂ with transitive permutation part,
        // counted directly, against j₂(Z²)·1!·|Z/2|·|Hom(Z², Z/2)| = 3·2·4
        let pres = GroupSpec::FreeAbelian(2).presentation().unwrap();
        let base = FiniteGroup::cyclic(2);
        let wg = WreathGroup::new(&base, 2, DEFAULT_GROUP_CAP).unwrap();
        let mut transitive = 0u64;
        for_each_hom(&pres, &wg, Budget::default(), |images| {
            let sigmas: Vec<&Permutation> =
                images.iter().map(|&i| &wg.element(i).sigma).collect();
            if orbit_sizes(2, &sigmas).len() == 1 {
                transitive += 1;
            }
        })
        .unwrap();
        assert_eq!(transitive, 24);
    }

    #[test]
    fn report_serialization_shape() {
        let report =
            verify_symmetric(&GroupSpec::FreeAbelian(1), 1, 1, Budget::default()).unwrap();
        let json = report.to_json();
        assert_eq!(json["source"], "Z");
        assert_eq!(json["points"], 1);
        assert_eq!(json["ok"], true);
        assert!(json["cases"].as_array().unwrap().len() == 2);
        // mismatch fields are omitted when the check passes
        assert!(json["cases"][0].get("mismatch").is_none());
    }
}
