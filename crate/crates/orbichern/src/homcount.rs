//! Censuses of homomorphisms `A → S_n` and `A → G ≀ S_n`, stratified by
//! cycle type, together with the exponential generating-function evaluators
//! they are checked against.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::grp::{
    for_each_hom, j_sequence, orbit_sizes, Budget, FiniteGroup, GroupSpec, JSequence,
    Permutation, WreathGroup,
};
use crate::qexact::{factorial, Rat, Series};
use crate::{Error, Result};

/// A cycle type of weight `n`: `c[k-1]` parts of size `k`, stored as a full
/// length-`n` multiplicity vector with `Σ k·c_k = n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
#[serde(transparent)]
pub struct CycleType(Vec<usize>);

impl CycleType {
    /// Validates `Σ k·c_k = len(counts)`.
    pub fn from_counts(counts: Vec<usize>) -> Result<Self> {
        let weight: usize = counts.iter().enumerate().map(|(i, c)| (i + 1) * c).sum();
        if weight != counts.len() {
            return Err(Error::Invalid(format!(
                "cycle type {counts:?} has weight {weight}, expected {}",
                counts.len()
            )));
        }
        Ok(CycleType(counts))
    }

    /// Builds the type of an orbit decomposition of `{1, …, n}`.
    pub fn from_orbit_sizes(sizes: &[usize], n: usize) -> Self {
        let mut counts = vec![0usize; n];
        for &s in sizes {
            counts[s - 1] += 1;
        }
        CycleType(counts)
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    /// Multiplicity of parts of size `k`.
    pub fn count(&self, k: usize) -> usize {
        self.0.get(k - 1).copied().unwrap_or(0)
    }

    /// `n`, the weight `Σ k·c_k`.
    pub fn weight(&self) -> usize {
        self.0.len()
    }

    /// Total number of parts `Σ c_k`.
    pub fn length(&self) -> usize {
        self.0.iter().sum()
    }

    /// `♯c = n! / ∏_k k^{c_k} c_k!` — the number of permutations of cycle
    /// type `c`.
    pub fn cardinality(&self) -> BigUint {
        let mut den = BigUint::one();
        for (i, &c) in self.0.iter().enumerate() {
            den *= BigUint::from(i + 1).pow(c as u32) * factorial(c);
        }
        factorial(self.weight()) / den
    }

    /// All cycle types of weight `n`, sorted.
    pub fn all_of_weight(n: usize) -> Vec<CycleType> {
        fn rec(remaining: usize, max_part: usize, counts: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if remaining == 0 {
                out.push(counts.clone());
                return;
            }
            for part in (1..=remaining.min(max_part)).rev() {
                counts[part - 1] += 1;
                rec(remaining - part, part, counts, out);
                counts[part - 1] -= 1;
            }
        }
        let mut raw = Vec::new();
        if n == 0 {
            raw.push(Vec::new());
        } else {
            rec(n, n, &mut vec![0; n], &mut raw);
        }
        let mut types: Vec<CycleType> = raw.into_iter().map(CycleType).collect();
        types.sort();
        types
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Which target family a census enumerated.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TargetDesc {
    Sym { n: usize },
    Wreath { base: String, n: usize },
}

impl fmt::Display for TargetDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetDesc::Sym { n } => write!(f, "S_{n}"),
            TargetDesc::Wreath { base, n } => write!(f, "{base} wr S_{n}"),
        }
    }
}

/// A full homomorphism count into `S_n` or `G ≀ S_n`, stratified by type.
#[derive(Clone, Debug)]
pub struct HomCensus {
    pub source: GroupSpec,
    pub target: TargetDesc,
    pub n: usize,
    pub counts: BTreeMap<CycleType, u64>,
    pub total: u64,
}

#[derive(Serialize)]
struct CensusRow<'a> {
    #[serde(rename = "type")]
    ty: &'a CycleType,
    count: u64,
}

#[derive(Serialize)]
struct CensusJson<'a> {
    source: String,
    target: String,
    n: usize,
    total: u64,
    by_type: Vec<CensusRow<'a>>,
}

impl HomCensus {
    pub fn count_of(&self, c: &CycleType) -> u64 {
        self.counts.get(c).copied().unwrap_or(0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<CensusRow> = self
            .counts
            .iter()
            .map(|(ty, &count)| CensusRow { ty, count })
            .collect();
        serde_json::to_value(CensusJson {
            source: self.source.to_string(),
            target: self.target.to_string(),
            n: self.n,
            total: self.total,
            by_type: rows,
        })
        .expect("census serialization cannot fail")
    }

    /// One row per cycle type: the type as space-separated multiplicities,
    /// then the count.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("type,count\n");
        for (ty, count) in &self.counts {
            let ty_str: Vec<String> = ty.counts().iter().map(|c| c.to_string()).collect();
            out.push_str(&format!("{},{count}\n", ty_str.join(" ")));
        }
        out
    }
}

/// Census of `Hom(A, S_n)`. A homomorphism's type is the orbit decomposition
/// of the image subgroup acting on the `n` points.
pub fn census_sym(a: &GroupSpec, n: usize, budget: Budget) -> Result<HomCensus> {
    let pres = a.presentation().map_err(|_| Error::UnsupportedGroup {
        op: "census_sym",
        group: a.to_string(),
    })?;
    let target = FiniteGroup::symmetric(n);
    let mut counts: BTreeMap<CycleType, u64> = BTreeMap::new();
    let total = for_each_hom(&pres, &target, budget, |images| {
        let perms: Vec<&Permutation> = images.iter().map(|&i| target.element(i)).collect();
        let ty = CycleType::from_orbit_sizes(&orbit_sizes(n, &perms), n);
        *counts.entry(ty).or_insert(0) += 1;
    })?;
    Ok(HomCensus {
        source: a.clone(),
        target: TargetDesc::Sym { n },
        n,
        counts,
        total,
    })
}

/// Census of `Hom(A, G ≀ S_n)`. The type of a homomorphism is the type of
/// its projection to `S_n` (orbit decomposition of the projected image).
pub fn census_wreath(
    a: &GroupSpec,
    g: &FiniteGroup,
    n: usize,
    budget: Budget,
) -> Result<HomCensus> {
    let pres = a.presentation().map_err(|_| Error::UnsupportedGroup {
        op: "census_wreath",
        group: a.to_string(),
    })?;
    let target = WreathGroup::new(g, n, crate::grp::DEFAULT_GROUP_CAP)?;
    let mut counts: BTreeMap<CycleType, u64> = BTreeMap::new();
    let total = for_each_hom(&pres, &target, budget, |images| {
        let sigmas: Vec<&Permutation> = images
            .iter()
            .map(|&i| &target.element(i).sigma)
            .collect();
        let ty = CycleType::from_orbit_sizes(&orbit_sizes(n, &sigmas), n);
        *counts.entry(ty).or_insert(0) += 1;
    })?;
    Ok(HomCensus {
        source: a.clone(),
        target: TargetDesc::Wreath {
            base: g.label().to_string(),
            n,
        },
        n,
        counts,
        total,
    })
}

/// `|Hom(B, G)|` for a presentable source and finite target, by direct
/// enumeration.
pub fn hom_count_into(b: &GroupSpec, g: &FiniteGroup, budget: Budget) -> Result<u64> {
    let pres = b.presentation().map_err(|_| Error::UnsupportedGroup {
        op: "hom_count_into",
        group: b.to_string(),
    })?;
    for_each_hom(&pres, g, budget, |_| {})
}

/// The isomorphism type of an index-`r` subgroup, for the families where
/// all index-`r` subgroups are isomorphic: `Z^m → Z^m`, `Z/d → Z/(d/r)`
/// when `r | d`, trivial → trivial. Returns `None` when there is no
/// index-`r` subgroup.
pub fn index_subgroup_type(a: &GroupSpec, r: usize) -> Result<Option<GroupSpec>> {
    assert!(r >= 1);
    match a {
        GroupSpec::Trivial => Ok((r == 1).then_some(GroupSpec::Trivial)),
        GroupSpec::FreeAbelian(m) => Ok(Some(GroupSpec::FreeAbelian(*m))),
        GroupSpec::Cyclic(d) => {
            let d = *d as usize;
            Ok((d % r == 0).then(|| match d / r {
                1 => GroupSpec::Trivial,
                q => GroupSpec::Cyclic(q as u32),
            }))
        }
        GroupSpec::PAdic(_) | GroupSpec::Presentation(_) => Err(Error::UnsupportedGroup {
            op: "index_subgroup_type",
            group: a.to_string(),
        }),
    }
}

/// `Σ_n |Hom(A, S_n)|/n! · z^n = exp(Σ_r j_r(A)/r · z^r)`.
pub fn sym_total_series(jseq: &JSequence, trunc: usize) -> Result<Series> {
    if jseq.rmax() < trunc {
        return Err(Error::Invalid(format!(
            "j-sequence covers r ≤ {}, need {trunc}",
            jseq.rmax()
        )));
    }
    let mut expo = Series::zero(trunc);
    for r in 1..=trunc {
        let c = Rat::from(jseq.j(r)) * Rat::frac(1, r as i64);
        expo = expo.add(&Series::monomial(trunc, r, c))?;
    }
    expo.exp()
}

/// `Σ_n |Hom(A, G≀S_n)|/(|G|^n n!) · z^n
///    = exp(Σ_r j_r(A) · |Hom(B_r, G)| / (|G|·r) · z^r)`
/// where `B_r` is the (unique up to isomorphism) index-`r` subgroup of `A`.
/// Supported for the families `index_subgroup_type` covers.
pub fn wreath_total_series(
    a: &GroupSpec,
    g: &FiniteGroup,
    trunc: usize,
    budget: Budget,
) -> Result<Series> {
    let jseq = j_sequence(a, trunc.max(1), budget)?;
    let mut expo = Series::zero(trunc);
    for r in 1..=trunc {
        let jr = jseq.j(r);
        if jr == 0 {
            continue;
        }
        let b = index_subgroup_type(a, r)?
            .expect("j_r > 0 implies an index-r subgroup exists");
        let h = hom_count_into(&b, g, budget)?;
        let c = Rat::from(jr) * Rat::from(h)
            / (Rat::from(g.order()) * Rat::from_int(r as i64));
        expo = expo.add(&Series::monomial(trunc, r, c))?;
    }
    expo.exp()
}

/// The per-type closed form `|Hom(A, S_n; c)| =
/// (n!/∏_r (r!)^{c_r} c_r!) · ∏_r T_r^{c_r}` with `T_r = (r-1)!·j_r(A)`:
/// choose the orbit partition, then a transitive action on each block.
pub fn expected_count_by_type(jseq: &JSequence, c: &CycleType) -> Result<BigUint> {
    let n = c.weight();
    if c.counts().iter().enumerate().any(|(i, &m)| m > 0 && i + 1 > jseq.rmax()) {
        return Err(Error::Invalid(format!(
            "j-sequence covers r ≤ {}, type {c} needs larger parts",
            jseq.rmax()
        )));
    }
    let mut num = factorial(n);
    let mut den = BigUint::one();
    for r in 1..=n {
        let cr = c.count(r);
        if cr == 0 {
            continue;
        }
        let t_r = factorial(r - 1) * BigUint::from(jseq.j(r));
        num *= t_r.pow(cr as u32);
        den *= factorial(r).pow(cr as u32) * factorial(cr);
    }
    Ok(num / den)
}
