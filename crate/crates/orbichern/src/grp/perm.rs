use std::fmt;

use crate::{Error, Result};

/// Permutation of `{0, …, degree-1}` stored as its image vector:
/// `images[i] = σ(i)`.
///
/// Composition follows function application, `(σ∘τ)(i) = σ(τ(i))`. Cycle
/// notation in text form is 1-based: `(1 2 3)(4 5)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Validates that `images` is a bijection on `{0, …, len-1}`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::Parse(format!("not a permutation: {images:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: apply `other` first. Panics on degree mismatch —
    /// degrees are validated at group-construction boundaries.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(
            self.degree(),
            other.degree(),
            "composing permutations of different degrees"
        );
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    /// Nontrivial cycles, each starting at its least point, sorted by that
    /// least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cyc.push(x);
                x = self.images[x];
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }

    /// Parses 1-based cycle notation such as `(1 2 3)(4 5)`; `()` is the
    /// identity. Points may be separated by spaces or commas. The degree is
    /// `max(point, explicit degree)` when `degree` is given, otherwise the
    /// largest point mentioned.
    pub fn parse(s: &str, degree: Option<usize>) -> Result<Self> {
        let s = s.trim();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut max_point = 0usize;
        let mut rest = s;
        while !rest.is_empty() {
            let open = rest
                .find('(')
                .ok_or_else(|| Error::Parse(format!("bad cycle notation `{s}`")))?;
            if !rest[..open].trim().is_empty() {
                return Err(Error::Parse(format!("bad cycle notation `{s}`")));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced parens in `{s}`")))?;
            if close < open {
                return Err(Error::Parse(format!("unbalanced parens in `{s}`")));
            }
            let body = &rest[open + 1..close];
            let mut cyc = Vec::new();
            for tok in body.split(|c: char| c.is_whitespace() || c == ',') {
                if tok.is_empty() {
                    continue;
                }
                let p: usize = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad point `{tok}` in `{s}`")))?;
                if p == 0 {
                    return Err(Error::Parse("cycle notation is 1-based".into()));
                }
                max_point = max_point.max(p);
                cyc.push(p - 1);
            }
            if !cyc.is_empty() {
                cycles.push(cyc);
            }
            rest = rest[close + 1..].trim_start();
        }
        let n = degree.unwrap_or(0).max(max_point);
        let mut images: Vec<usize> = (0..n).collect();
        for cyc in &cycles {
            let mut seen = std::collections::HashSet::new();
            for &p in cyc {
                if !seen.insert(p) {
                    return Err(Error::Parse(format!("repeated point in cycle of `{s}`")));
                }
            }
            for w in 0..cyc.len() {
                let from = cyc[w];
                let to = cyc[(w + 1) % cyc.len()];
                if images[from] != from {
                    return Err(Error::Parse(format!("cycles overlap in `{s}`")));
                }
                images[from] = to;
            }
        }
        Permutation::from_images(images)
    }
}

impl fmt::Display for Permutation {
    /// 1-based cycle notation; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cyc in cycles {
            write!(f, "(")?;
            for (i, p) in cyc.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Orbit sizes of the group generated by `gens` acting on `{0, …, n-1}`,
/// via connected components of the union of the generators' functional
/// graphs (the subgroup orbit is exactly the component, since generators
/// are invertible).
pub(crate) fn orbit_sizes(n: usize, gens: &[&Permutation]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in gens {
        for i in 0..n {
            let (a, b) = (find(&mut parent, i), find(&mut parent, g.apply(i)));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut size = vec![0usize; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        size[r] += 1;
    }
    size.into_iter().filter(|&s| s > 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_applies_right_factor_first() {
        let s = Permutation::parse("(1 2)", Some(3)).unwrap();
        let t = Permutation::parse("(2 3)", Some(3)).unwrap();
        // (s∘t)(2) = s(t(2)) = s(3) = 3 → 0-based: (s∘t)(1) = 2
        let st = s.compose(&t);
        assert_eq!(st.apply(1), 2);
        assert_eq!(st, Permutation::parse("(1 2 3)", Some(3)).unwrap());
    }

    #[test]
    fn inverse_round_trip() {
        let p = Permutation::parse("(1 2 3)(4 5)", None).unwrap();
        assert_eq!(p.degree(), 5);
        assert!(p.compose(&p.inverse()).is_identity());
        assert!(p.inverse().compose(&p).is_identity());
    }

    #[test]
    fn parse_and_display() {
        let p = Permutation::parse("(1 2 3)(4 5)", None).unwrap();
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
        assert_eq!(Permutation::identity(4).to_string(), "()");
        assert_eq!(Permutation::parse("()", Some(3)).unwrap(), Permutation::identity(3));
        assert!(Permutation::parse("(1 1)", None).is_err());
        assert!(Permutation::parse("(1 2)(2 3)", None).is_err());
        assert!(Permutation::parse("(0 1)", None).is_err());
        assert!(Permutation::parse("(1 2", None).is_err());
    }

    #[test]
    fn orbit_sizes_of_generated_group() {
        let a = Permutation::parse("(1 2)", Some(4)).unwrap();
        let b = Permutation::parse("(2 3)", Some(4)).unwrap();
        let mut sizes = orbit_sizes(4, &[&a, &b]);
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3]);
    }
}
