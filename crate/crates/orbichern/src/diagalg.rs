//! The symbolic ⊙-algebra: the free commutative graded Q-algebra on formal
//! diagonal-operator values `D^k(c)`, truncated by total weight.
//!
//! The weight-`n` slice of an element is the `z^n` coefficient of the
//! corresponding generating function. `exp`/`log` are mutually inverse up to
//! the truncation order, and every engine here (Dey-Wohlfahrt, the wreath
//! version, Lemma-Dey expansions, Euler-product forms) produces elements of
//! this algebra that the test suites compare coefficient by coefficient.
//! `degree_specialize` collapses an element to a numeric `Series` by sending
//! every base symbol to a rational (its degree), which is an algebra
//! homomorphism.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::grp::{j_sequence, Budget, GroupSpec, JSequence};
use crate::homcount::{census_sym, index_subgroup_type, CycleType};
use crate::qexact::{factorial, Rat, Series};
use crate::{Error, Result};

/// A formal symbol standing for a class on the base space (e.g. `c`, `1_X`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BaseClass(String);

impl BaseClass {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(Error::Invalid(format!(
                "base class label {name:?} must be nonempty and whitespace-free"
            )));
        }
        Ok(BaseClass(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for BaseClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A finite Q-linear combination of base classes — the argument fed to a
/// diagonal operator.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BaseElement {
    terms: BTreeMap<BaseClass, Rat>,
}

impl BaseElement {
    pub fn zero() -> Self {
        BaseElement::default()
    }

    /// A single class with coefficient 1.
    pub fn class(c: BaseClass) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(c, Rat::one());
        BaseElement { terms }
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (BaseClass, Rat)>) -> Self {
        let mut out = BaseElement::zero();
        for (c, r) in iter {
            out.insert(c, &r);
        }
        out
    }

    fn insert(&mut self, c: BaseClass, r: &Rat) {
        if r.is_zero() {
            return;
        }
        let entry = self.terms.entry(c);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(r.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + r;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BaseClass, &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return BaseElement::zero();
        }
        BaseElement {
            terms: self
                .terms
                .iter()
                .map(|(c, v)| (c.clone(), v * r))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (c, r) in &other.terms {
            out.insert(c.clone(), r);
        }
        out
    }
}

/// One generator `D^k(base)` of the free algebra (`k ≥ 1`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DiagGen {
    pub k: usize,
    pub base: BaseClass,
}

/// A commutative monomial in the generators, in canonical form: factors
/// sorted by `(k, base)`, exponents ≥ 1, duplicates merged.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DiagMonomial {
    factors: Vec<(DiagGen, u32)>,
}

impl DiagMonomial {
    pub fn unit() -> Self {
        DiagMonomial { factors: vec![] }
    }

    pub fn generator(k: usize, base: BaseClass) -> Result<Self> {
        if k == 0 {
            return Err(Error::Invalid("diagonal operators have order k ≥ 1".into()));
        }
        Ok(DiagMonomial {
            factors: vec![(DiagGen { k, base }, 1)],
        })
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (usize, BaseClass, u32)>) -> Result<Self> {
        let mut map: BTreeMap<DiagGen, u32> = BTreeMap::new();
        for (k, base, e) in factors {
            if k == 0 {
                return Err(Error::Invalid("diagonal operators have order k ≥ 1".into()));
            }
            if e == 0 {
                continue;
            }
            *map.entry(DiagGen { k, base }).or_insert(0) += e;
        }
        Ok(DiagMonomial {
            factors: map.into_iter().collect(),
        })
    }

    pub fn weight(&self) -> usize {
        self.factors
            .iter()
            .map(|(g, e)| g.k * (*e as usize))
            .sum()
    }

    /// Total number of factors counted with multiplicity.
    pub fn length(&self) -> usize {
        self.factors.iter().map(|(_, e)| *e as usize).sum()
    }

    pub fn factors(&self) -> &[(DiagGen, u32)] {
        &self.factors
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    fn mul(&self, other: &Self) -> Self {
        let mut map: BTreeMap<DiagGen, u32> = self.factors.iter().cloned().collect();
        for (g, e) in &other.factors {
            *map.entry(g.clone()).or_insert(0) += e;
        }
        DiagMonomial {
            factors: map.into_iter().collect(),
        }
    }
}

impl PartialOrd for DiagMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DiagMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

impl fmt::Display for DiagMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (g, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("·")?;
            }
            write!(f, "D{}({})", g.k, g.base)?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// An element of the ⊙-algebra truncated at total weight `trunc`: a finite
/// Q-combination of monomials of weight ≤ trunc. The weight-`n` part is the
/// `z^n` coefficient of the series the element stands for.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiagElement {
    trunc: usize,
    terms: BTreeMap<DiagMonomial, Rat>,
}

impl DiagElement {
    pub fn zero(trunc: usize) -> Self {
        DiagElement {
            trunc,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(trunc: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(DiagMonomial::unit(), Rat::one());
        DiagElement { trunc, terms }
    }

    /// The single generator `D^k(base)`.
    pub fn generator(trunc: usize, k: usize, base: BaseClass) -> Result<Self> {
        let mono = DiagMonomial::generator(k, base)?;
        if k > trunc {
            return Err(Error::Invalid(format!(
                "D^{k} exceeds truncation weight {trunc}"
            )));
        }
        let mut terms = BTreeMap::new();
        terms.insert(mono, Rat::one());
        Ok(DiagElement { trunc, terms })
    }

    /// `D^k(α)` for a linear combination α, extended linearly.
    pub fn diagonal(trunc: usize, k: usize, alpha: &BaseElement) -> Result<Self> {
        let mut out = DiagElement::zero(trunc);
        for (c, r) in alpha.terms() {
            let gen = DiagElement::generator(trunc, k, c.clone())?;
            out = out.add(&gen.scale(r))?;
        }
        Ok(out)
    }

    pub fn from_terms(
        trunc: usize,
        iter: impl IntoIterator<Item = (DiagMonomial, Rat)>,
    ) -> Result<Self> {
        let mut out = DiagElement::zero(trunc);
        for (m, r) in iter {
            if m.weight() > trunc {
                return Err(Error::Invalid(format!(
                    "monomial {m} has weight {} beyond truncation {trunc}",
                    m.weight()
                )));
            }
            out.insert(m, &r);
        }
        Ok(out)
    }

    fn insert(&mut self, m: DiagMonomial, r: &Rat) {
        if r.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(r.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + r;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DiagMonomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &DiagMonomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest weight carrying a nonzero term (0 for the zero element).
    pub fn max_weight(&self) -> usize {
        self.terms.keys().map(|m| m.weight()).max().unwrap_or(0)
    }

    /// The homogeneous part of weight exactly `n`.
    pub fn weight_slice(&self, n: usize) -> DiagElement {
        DiagElement {
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weight() == n)
                .map(|(m, r)| (m.clone(), r.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.trunc != other.trunc {
            return Err(Error::TruncMismatch(self.trunc, other.trunc));
        }
        let mut out = self.clone();
        for (m, r) in &other.terms {
            out.insert(m.clone(), r);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        DiagElement {
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .map(|(m, r)| (m.clone(), -r))
                .collect(),
        }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return DiagElement::zero(self.trunc);
        }
        DiagElement {
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * r))
                .collect(),
        }
    }

    /// The ⊙-product: the free commutative product, truncated by weight.
    pub fn odot(&self, other: &Self) -> Result<Self> {
        if self.trunc != other.trunc {
            return Err(Error::TruncMismatch(self.trunc, other.trunc));
        }
        let mut out = DiagElement::zero(self.trunc);
        for (m1, r1) in &self.terms {
            let w1 = m1.weight();
            for (m2, r2) in &other.terms {
                if w1 + m2.weight() > self.trunc {
                    continue;
                }
                out.insert(m1.mul(m2), &(r1 * r2));
            }
        }
        Ok(out)
    }

    /// ⊙-power with the convention `a^{⊙0} = 1`.
    pub fn pow_odot(&self, e: u32) -> Self {
        let mut acc = DiagElement::unit(self.trunc);
        for _ in 0..e {
            acc = acc.odot(self).expect("equal truncations");
        }
        acc
    }

    /// `exp(T) = Σ T^{⊙n}/n!`; requires the weight-0 part of `T` to vanish,
    /// so the sum stops at `n = trunc`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeff(&DiagMonomial::unit()).is_zero() {
            return Err(Error::NonzeroConstantTerm { op: "diag exp" });
        }
        let mut acc = DiagElement::unit(self.trunc);
        let mut pw = DiagElement::unit(self.trunc);
        for k in 1..=self.trunc {
            pw = pw.odot(self)?;
            if pw.is_zero() {
                break;
            }
            let inv_fact = Rat::from_biguint(&factorial(k)).recip()?;
            acc = acc.add(&pw.scale(&inv_fact))?;
        }
        Ok(acc)
    }

    /// `log(1+T) = Σ (−1)^{k+1} T^{⊙k}/k`; requires weight-0 part equal 1.
    pub fn log(&self) -> Result<Self> {
        if !self.coeff(&DiagMonomial::unit()).is_one() {
            return Err(Error::ConstantTermNotOne { op: "diag log" });
        }
        let u = self.sub(&DiagElement::unit(self.trunc))?;
        let mut acc = DiagElement::zero(self.trunc);
        let mut pw = DiagElement::unit(self.trunc);
        for k in 1..=self.trunc {
            pw = pw.odot(&u)?;
            if pw.is_zero() {
                break;
            }
            let c = Rat::frac(if k % 2 == 1 { 1 } else { -1 }, k as i64);
            acc = acc.add(&pw.scale(&c))?;
        }
        Ok(acc)
    }

    /// The algebra homomorphism to numeric series: every `D^k(c)` factor
    /// becomes the assigned value of `c`, and a weight-`n` monomial lands in
    /// the `z^n` coefficient.
    pub fn degree_specialize(&self, values: &BTreeMap<BaseClass, Rat>) -> Result<Series> {
        let mut coeffs = vec![Rat::zero(); self.trunc + 1];
        for (m, r) in &self.terms {
            let mut val = r.clone();
            for (g, e) in m.factors() {
                let v = values
                    .get(&g.base)
                    .ok_or_else(|| Error::UnknownBaseClass(g.base.name().to_string()))?;
                val = val * v.pow(*e as i32)?;
            }
            coeffs[m.weight()] = &coeffs[m.weight()] + &val;
        }
        Series::from_coeffs(self.trunc, coeffs)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("diag element serialization cannot fail")
    }

    /// Plain-text rendering grouped by weight, e.g.
    /// `1 + z·D1(c) + z^2·( 1/2·D1(c)^2 + 1/2·D2(c) )`.
    pub fn pretty(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut slices: Vec<String> = Vec::new();
        let mut current: Vec<String> = Vec::new();
        let mut current_weight = usize::MAX;
        let flush = |w: usize, body: &mut Vec<String>, out: &mut Vec<String>| {
            if body.is_empty() {
                return;
            }
            let joined = body.join(" + ");
            let rendered = match w {
                0 => joined,
                1 if body.len() == 1 => format!("z·{joined}"),
                1 => format!("z·( {joined} )"),
                _ if body.len() == 1 => format!("z^{w}·{joined}"),
                _ => format!("z^{w}·( {joined} )"),
            };
            out.push(rendered);
            body.clear();
        };
        for (m, r) in &self.terms {
            let w = m.weight();
            if w != current_weight {
                flush(current_weight, &mut current, &mut slices);
                current_weight = w;
            }
            let term = if m.is_unit() {
                r.to_string()
            } else if r.is_one() {
                m.to_string()
            } else {
                format!("{r}·{m}")
            };
            current.push(term);
        }
        flush(current_weight, &mut current, &mut slices);
        slices.join(" + ")
    }
}

impl fmt::Display for DiagElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

struct MonoRepr<'a>(&'a DiagMonomial);

impl Serialize for MonoRepr<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.0.length()))?;
        #[derive(Serialize)]
        struct GenRepr<'a> {
            k: usize,
            base: &'a str,
        }
        for (g, e) in self.0.factors() {
            for _ in 0..*e {
                seq.serialize_element(&GenRepr {
                    k: g.k,
                    base: g.base.name(),
                })?;
            }
        }
        seq.end()
    }
}

impl Serialize for DiagElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct TermRepr<'a> {
            coeff: &'a Rat,
            mono: MonoRepr<'a>,
        }
        let terms: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(m, r)| TermRepr {
                coeff: r,
                mono: MonoRepr(m),
            })
            .collect();
        let mut s = serializer.serialize_struct("DiagElement", 2)?;
        s.serialize_field("trunc", &self.trunc)?;
        s.serialize_field("terms", &terms)?;
        s.end()
    }
}

/// A standard formal diagonal operator `Σ_k v_k z^k D^k` applied to α:
/// `Σ_k v_k D^k(α)`, extended linearly. Keys beyond the truncation are
/// ignored; a weight-0 key is rejected (standard operators start at `D^1`).
pub fn apply_standard(
    u: &BTreeMap<usize, Rat>,
    alpha: &BaseElement,
    trunc: usize,
) -> Result<DiagElement> {
    let mut out = DiagElement::zero(trunc);
    for (&k, v) in u {
        if k == 0 && !v.is_zero() {
            return Err(Error::Invalid(
                "standard operator has a weight-0 term".into(),
            ));
        }
        if k == 0 || k > trunc || v.is_zero() {
            continue;
        }
        out = out.add(&DiagElement::diagonal(trunc, k, alpha)?.scale(v))?;
    }
    Ok(out)
}

/// The power notation `(1+U)^α := exp(Log(1+U)(α))` for a standard operator
/// `U = Σ_k v_k z^k D^k` with no weight-0 term. In particular
/// `(1−z^rD^r)^{−α} = exp(Σ_j z^{rj}/j · D^{rj}(α))`.
pub fn power_notation(
    u: &BTreeMap<usize, Rat>,
    alpha: &BaseElement,
    trunc: usize,
) -> Result<DiagElement> {
    if u.get(&0).is_some_and(|v| !v.is_zero()) {
        return Err(Error::NonzeroConstantTerm {
            op: "power notation",
        });
    }
    let mut one_plus_u = Series::one(trunc);
    for (&k, v) in u {
        if k == 0 || k > trunc {
            continue;
        }
        one_plus_u = one_plus_u.add(&Series::monomial(trunc, k, v.clone()))?;
    }
    let log = one_plus_u.log()?;
    let log_coeffs: BTreeMap<usize, Rat> =
        (1..=trunc).map(|k| (k, log.coeff(k).clone())).collect();
    apply_standard(&log_coeffs, alpha, trunc)?.exp()
}

/// The Dey-Wohlfahrt right-hand side `exp(Σ_r j_r(A)/r · z^r D^r(α))`.
pub fn dey_wohlfahrt_rhs(jseq: &JSequence, alpha: &BaseElement, trunc: usize) -> Result<DiagElement> {
    if jseq.rmax() < trunc {
        return Err(Error::Invalid(format!(
            "j-sequence covers r ≤ {}, need {trunc}",
            jseq.rmax()
        )));
    }
    let mut expo = DiagElement::zero(trunc);
    for r in 1..=trunc {
        let jr = jseq.j(r);
        if jr == 0 {
            continue;
        }
        let c = Rat::from(jr) / Rat::from_int(r as i64);
        expo = expo.add(&DiagElement::diagonal(trunc, r, alpha)?.scale(&c))?;
    }
    expo.exp()
}

/// The wreath-version right-hand side `exp(Σ_r (1/r) z^r D^r(β_r))`, where
/// `β_r` stands for the index-`r` canonical class (the sum of `1^{(B)}`
/// over index-`r` subgroups `B`). Indices absent from the assignment
/// contribute nothing.
pub fn dey_wohlfahrt_wreath_rhs(
    assignment: &BTreeMap<usize, BaseElement>,
    trunc: usize,
) -> Result<DiagElement> {
    let mut expo = DiagElement::zero(trunc);
    for (&r, beta) in assignment {
        if r == 0 {
            return Err(Error::Invalid("subgroup index r must be ≥ 1".into()));
        }
        if r > trunc || beta.is_zero() {
            continue;
        }
        let c = Rat::frac(1, r as i64);
        expo = expo.add(&DiagElement::diagonal(trunc, r, beta)?.scale(&c))?;
    }
    expo.exp()
}

/// Builds the symbolic assignment `r ↦ j_r(A)·e[B_r]` for the families in
/// which all index-`r` subgroups are isomorphic to a single `B_r`: one
/// fresh symbol per isomorphism type, scaled by the subgroup count.
pub fn wreath_base_assignment(
    a: &GroupSpec,
    rmax: usize,
    budget: Budget,
) -> Result<BTreeMap<usize, BaseElement>> {
    let jseq = j_sequence(a, rmax.max(1), budget)?;
    let mut out = BTreeMap::new();
    for r in 1..=rmax {
        let jr = jseq.j(r);
        if jr == 0 {
            continue;
        }
        let b = index_subgroup_type(a, r)?
            .expect("j_r > 0 implies an index-r subgroup exists");
        let symbol = BaseClass::new(format!("e[{b}]"))?;
        out.insert(r, BaseElement::class(symbol).scale(&Rat::from(jr)));
    }
    Ok(out)
}

/// The cycle-type expansion
/// `Σ_n Σ_{|c|=n} (♯c/n!) ∏_r (j_r(A)·D^r(α))^{⊙c_r}`.
pub fn lemma_dey_lhs(jseq: &JSequence, alpha: &BaseElement, trunc: usize) -> Result<DiagElement> {
    if jseq.rmax() < trunc {
        return Err(Error::Invalid(format!(
            "j-sequence covers r ≤ {}, need {trunc}",
            jseq.rmax()
        )));
    }
    let diag: Vec<DiagElement> = (1..=trunc)
        .map(|r| DiagElement::diagonal(trunc, r, alpha))
        .collect::<Result<_>>()?;
    let mut acc = DiagElement::zero(trunc);
    for n in 0..=trunc {
        for c in CycleType::all_of_weight(n) {
            let mut term = DiagElement::unit(trunc);
            let mut coeff = Rat::from_biguint(&c.cardinality())
                / Rat::from_biguint(&factorial(n));
            for r in 1..=n {
                let cr = c.count(r);
                if cr == 0 {
                    continue;
                }
                coeff = coeff * Rat::from(jseq.j(r)).pow(cr as i32)?;
                if coeff.is_zero() {
                    break;
                }
                term = term.odot(&diag[r - 1].pow_odot(cr as u32))?;
            }
            if !coeff.is_zero() {
                acc = acc.add(&term.scale(&coeff))?;
            }
        }
    }
    Ok(acc)
}

/// The enumeration-driven left-hand side: for each `n ≤ trunc` run the
/// brute-force census of `Hom(A, S_n)` and emit
/// `Σ_c (N_c/n!) ∏_r D^r(α)^{⊙c_r}` with the counted `N_c` — no
/// subgroup-count formula enters.
pub fn hom_oracle_lhs(
    a: &GroupSpec,
    alpha: &BaseElement,
    trunc: usize,
    budget: Budget,
) -> Result<DiagElement> {
    let diag: Vec<DiagElement> = (1..=trunc)
        .map(|r| DiagElement::diagonal(trunc, r, alpha))
        .collect::<Result<_>>()?;
    let mut acc = DiagElement::zero(trunc);
    for n in 0..=trunc {
        let census = census_sym(a, n, budget)?;
        let n_fact = Rat::from_biguint(&factorial(n));
        for (c, &count) in &census.counts {
            if count == 0 {
                continue;
            }
            let mut term = DiagElement::unit(trunc);
            for r in 1..=n {
                let cr = c.count(r);
                if cr > 0 {
                    term = term.odot(&diag[r - 1].pow_odot(cr as u32))?;
                }
            }
            acc = acc.add(&term.scale(&(Rat::from(count) / n_fact.clone())))?;
        }
    }
    Ok(acc)
}

/// The Euler ⊙-form `∏_r (1−z^rD^r)^{−β_r} =
/// exp(Σ_r Σ_{j≥1} (1/j)·D^{rj}(β_r))` for an assignment `r ↦ β_r`.
pub fn euler_product_form(
    exponents: &BTreeMap<usize, BaseElement>,
    trunc: usize,
) -> Result<DiagElement> {
    let mut expo = DiagElement::zero(trunc);
    for (&r, beta) in exponents {
        if r == 0 {
            return Err(Error::Invalid("Euler factors need r ≥ 1".into()));
        }
        if beta.is_zero() {
            continue;
        }
        let mut j = 1usize;
        while r * j <= trunc {
            let c = Rat::frac(1, j as i64);
            expo = expo.add(&DiagElement::diagonal(trunc, r * j, beta)?.scale(&c))?;
            j += 1;
        }
    }
    expo.exp()
}

/// The Bryan-Fulman Euler product over `(m−1)`-tuples:
/// `∏_{j_1,…,j_{m−1} ≥ 1} (1 − z^{j_1⋯j_{m−1}})^{−j_1^{m−2}⋯j_{m−2}·χ}`,
/// assembled by literal tuple enumeration.
pub fn bryan_fulman_series(m: u32, chi: &Rat, trunc: usize) -> Result<Series> {
    if m == 0 {
        return Err(Error::Invalid(
            "Bryan-Fulman form needs free-abelian rank m ≥ 1".into(),
        ));
    }
    let mut exponents: BTreeMap<usize, Rat> = BTreeMap::new();
    // tuples (j_1, …, j_{m-1}) with product ≤ trunc, weight ∏ j_i^{m-1-i}
    fn rec(
        left: u32,
        product: usize,
        weight: u64,
        trunc: usize,
        out: &mut BTreeMap<usize, u64>,
    ) {
        if left == 0 {
            *out.entry(product).or_insert(0) += weight;
            return;
        }
        let mut j = 1usize;
        while product * j <= trunc {
            let factor = (j as u64).pow(left - 1);
            rec(left - 1, product * j, weight * factor, trunc, out);
            j += 1;
        }
    }
    let mut raw: BTreeMap<usize, u64> = BTreeMap::new();
    if trunc >= 1 {
        rec(m - 1, 1, 1, trunc, &mut raw);
    }
    for (k, w) in raw {
        let e = &Rat::from(w) * chi;
        if !e.is_zero() {
            exponents.insert(k, e);
        }
    }
    Series::euler_product(&exponents, trunc)
}
