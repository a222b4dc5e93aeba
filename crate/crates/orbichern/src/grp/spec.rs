use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// A word in the generators of a presentation: letter `+k` is generator
/// `k-1`, letter `-k` its inverse.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word(Vec<i32>);

impl Word {
    pub fn new(letters: Vec<i32>) -> Result<Self> {
        if letters.iter().any(|&l| l == 0) {
            return Err(Error::Invalid("word letter 0".into()));
        }
        Ok(Word(letters))
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&l| -l).collect())
    }

    fn repeat(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Vec::with_capacity(self.0.len() * e.unsigned_abs() as usize);
        for _ in 0..e.unsigned_abs() {
            out.extend_from_slice(&base.0);
        }
        Word(out)
    }

    /// `[x, y] = x y x⁻¹ y⁻¹`.
    pub fn commutator(x: &Word, y: &Word) -> Word {
        let mut out = x.0.clone();
        out.extend_from_slice(&y.0);
        out.extend(x.inverse().0);
        out.extend(y.inverse().0);
        Word(out)
    }

    /// Renders against generator names: single-letter names use case for
    /// inversion (`a`/`A`), longer names fall back to `name^-1`.
    pub fn display_with(&self, gens: &[String]) -> String {
        let mut out = String::new();
        for &l in &self.0 {
            let name = &gens[l.unsigned_abs() as usize - 1];
            if name.len() == 1 && name.chars().next().unwrap().is_ascii_lowercase() {
                if l > 0 {
                    out.push_str(name);
                } else {
                    out.push(name.chars().next().unwrap().to_ascii_uppercase());
                }
            } else {
                if !out.is_empty() {
                    out.push('*');
                }
                out.push_str(name);
                if l < 0 {
                    out.push_str("^-1");
                }
            }
        }
        out
    }
}

/// A finite presentation: generator names plus relator words.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let n = generators.len();
        for (i, g) in generators.iter().enumerate() {
            if g.is_empty() {
                return Err(Error::Invalid("empty generator name".into()));
            }
            if generators[..i].contains(g) {
                return Err(Error::Invalid(format!("duplicate generator `{g}`")));
            }
        }
        for w in &relators {
            for &l in w.letters() {
                if l.unsigned_abs() as usize > n {
                    return Err(Error::Invalid(format!(
                        "relator references undeclared generator #{}",
                        l.unsigned_abs()
                    )));
                }
            }
        }
        Ok(Presentation {
            generators,
            relators,
        })
    }
}

/// Source-group families for which subgroup counts and homomorphism
/// censuses are computed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GroupSpec {
    /// The one-element group.
    Trivial,
    /// Free abelian group `Z^m`, `m ≥ 1`.
    FreeAbelian(u32),
    /// Cyclic group `Z/d`, `d ≥ 1`.
    Cyclic(u32),
    /// The additive p-adic integers: finite-index subgroups are exactly the
    /// `p^k Z_p`. Infinitely generated, so only closed-form subgroup counts
    /// are available.
    PAdic(u32),
    /// An explicit finite presentation.
    Presentation(Presentation),
}

impl GroupSpec {
    /// Name characters for machine-built presentations: a, b, c, …
    fn gen_name(i: usize) -> String {
        if i < 26 {
            ((b'a' + i as u8) as char).to_string()
        } else {
            format!("g{}", i + 1)
        }
    }

    /// Converts to a finite presentation where one exists: `Z^m` becomes
    /// `m` generators with pairwise commutator relators, `Z/d` one generator
    /// with `a^d`, the trivial group the empty presentation. The p-adic
    /// family has no finite presentation and errors.
    pub fn presentation(&self) -> Result<Presentation> {
        match self {
            GroupSpec::Trivial => Presentation::new(vec![], vec![]),
            GroupSpec::FreeAbelian(m) => {
                let m = *m as usize;
                let gens: Vec<String> = (0..m).map(Self::gen_name).collect();
                let mut relators = Vec::new();
                for i in 0..m {
                    for j in (i + 1)..m {
                        relators.push(Word::commutator(
                            &Word::new(vec![i as i32 + 1])?,
                            &Word::new(vec![j as i32 + 1])?,
                        ));
                    }
                }
                Presentation::new(gens, relators)
            }
            GroupSpec::Cyclic(d) => Presentation::new(
                vec!["a".into()],
                vec![Word::new(vec![1])?.repeat(*d as i64)],
            ),
            GroupSpec::PAdic(_) => Err(Error::UnsupportedGroup {
                op: "presentation",
                group: self.to_string(),
            }),
            GroupSpec::Presentation(p) => Ok(p.clone()),
        }
    }

    pub fn is_presentable(&self) -> bool {
        !matches!(self, GroupSpec::PAdic(_))
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Trivial => write!(f, "1"),
            GroupSpec::FreeAbelian(1) => write!(f, "Z"),
            GroupSpec::FreeAbelian(m) => write!(f, "Z^{m}"),
            GroupSpec::Cyclic(d) => write!(f, "Z/{d}"),
            GroupSpec::PAdic(p) => write!(f, "Zp({p})"),
            GroupSpec::Presentation(p) => {
                write!(f, "<{}", p.generators.join(","))?;
                if !p.relators.is_empty() {
                    write!(f, " | ")?;
                    for (i, w) in p.relators.iter().enumerate() {
                        if i > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "{}", w.display_with(&p.generators))?;
                    }
                }
                write!(f, ">")
            }
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Text forms: `1`, `Z`, `Z^m`, `Z/d`, `Zp(p)`, and presentations such
    /// as `<a,b | [a,b]>` (commutator sugar, `^` powers, `A` for `a⁻¹`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(GroupSpec::Trivial);
        }
        if s == "Z" {
            return Ok(GroupSpec::FreeAbelian(1));
        }
        if let Some(m) = s.strip_prefix("Z^") {
            let m: u32 = m
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad rank in `{s}`")))?;
            if m == 0 {
                return Err(Error::Parse("rank must be at least 1 (use `1`)".into()));
            }
            return Ok(GroupSpec::FreeAbelian(m));
        }
        if let Some(d) = s.strip_prefix("Z/") {
            let d: u32 = d
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad order in `{s}`")))?;
            if d == 0 {
                return Err(Error::Parse("cyclic order must be at least 1".into()));
            }
            return Ok(GroupSpec::Cyclic(d));
        }
        if let Some(p) = s.strip_prefix("Zp(").and_then(|r| r.strip_suffix(')')) {
            let p: u32 = p
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad prime in `{s}`")))?;
            if !is_prime(p) {
                return Err(Error::Parse(format!("{p} is not prime")));
            }
            return Ok(GroupSpec::PAdic(p));
        }
        if let Some(body) = s.strip_prefix('<').and_then(|r| r.strip_suffix('>')) {
            return parse_presentation(body).map(GroupSpec::Presentation);
        }
        Err(Error::Parse(format!("unrecognized group `{s}`")))
    }
}

fn parse_presentation(body: &str) -> Result<Presentation> {
    let (gens_part, rel_part) = match body.split_once('|') {
        Some((g, r)) => (g, Some(r)),
        None => (body, None),
    };
    let generators: Vec<String> = gens_part
        .split(',')
        .map(|g| g.trim().to_string())
        .filter(|g| !g.is_empty())
        .collect();
    for g in &generators {
        let ok = g.len() == 1 && g.chars().next().unwrap().is_ascii_lowercase();
        if !ok {
            return Err(Error::Parse(format!(
                "generator `{g}` must be a single lowercase letter"
            )));
        }
    }
    let mut relators = Vec::new();
    if let Some(rels) = rel_part {
        for chunk in split_top_level(rels) {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                continue;
            }
            relators.push(parse_word(chunk, &generators)?);
        }
    }
    Presentation::new(generators, relators)
}

/// Splits on commas not nested inside brackets or parens (commutator
/// arguments contain commas).
fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

/// Recursive-descent word parser: letters (`a` generator, `A` inverse),
/// commutators `[x,y]`, grouping `(…)`, and integer powers `^n` on any atom.
fn parse_word(s: &str, gens: &[String]) -> Result<Word> {
    let chars: Vec<char> = s.chars().collect();
    let mut pos = 0usize;
    let w = parse_word_until(&chars, &mut pos, None, gens, s)?;
    if pos != chars.len() {
        return Err(Error::Parse(format!("trailing input in word `{s}`")));
    }
    Ok(w)
}

fn parse_word_until(
    chars: &[char],
    pos: &mut usize,
    stop: Option<&[char]>,
    gens: &[String],
    whole: &str,
) -> Result<Word> {
    let mut letters: Vec<i32> = Vec::new();
    while *pos < chars.len() {
        let c = chars[*pos];
        if let Some(stop) = stop {
            if stop.contains(&c) {
                break;
            }
        }
        if c.is_whitespace() || c == '*' {
            *pos += 1;
            continue;
        }
        let atom: Word = if c == '[' {
            *pos += 1;
            let x = parse_word_until(chars, pos, Some(&[',']), gens, whole)?;
            expect(chars, pos, ',', whole)?;
            let y = parse_word_until(chars, pos, Some(&[']']), gens, whole)?;
            expect(chars, pos, ']', whole)?;
            Word::commutator(&x, &y)
        } else if c == '(' {
            *pos += 1;
            let w = parse_word_until(chars, pos, Some(&[')']), gens, whole)?;
            expect(chars, pos, ')', whole)?;
            w
        } else if c.is_ascii_alphabetic() {
            *pos += 1;
            let lower = c.to_ascii_lowercase().to_string();
            let idx = gens
                .iter()
                .position(|g| *g == lower)
                .ok_or_else(|| Error::Parse(format!("undeclared generator `{c}` in `{whole}`")))?;
            let l = idx as i32 + 1;
            Word::new(vec![if c.is_ascii_lowercase() { l } else { -l }])?
        } else {
            return Err(Error::Parse(format!("unexpected `{c}` in word `{whole}`")));
        };
        // optional ^exponent
        let atom = if *pos < chars.len() && chars[*pos] == '^' {
            *pos += 1;
            let mut num = String::new();
            if *pos < chars.len() && chars[*pos] == '-' {
                num.push('-');
                *pos += 1;
            }
            while *pos < chars.len() && chars[*pos].is_ascii_digit() {
                num.push(chars[*pos]);
                *pos += 1;
            }
            let e: i64 = num
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in `{whole}`")))?;
            atom.repeat(e)
        } else {
            atom
        };
        letters.extend_from_slice(atom.letters());
    }
    Word::new(letters)
}

fn expect(chars: &[char], pos: &mut usize, want: char, whole: &str) -> Result<()> {
    if *pos < chars.len() && chars[*pos] == want {
        *pos += 1;
        Ok(())
    } else {
        Err(Error::Parse(format!("expected `{want}` in `{whole}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_families() {
        assert_eq!("1".parse::<GroupSpec>().unwrap(), GroupSpec::Trivial);
        assert_eq!("Z".parse::<GroupSpec>().unwrap(), GroupSpec::FreeAbelian(1));
        assert_eq!("Z^3".parse::<GroupSpec>().unwrap(), GroupSpec::FreeAbelian(3));
        assert_eq!("Z/4".parse::<GroupSpec>().unwrap(), GroupSpec::Cyclic(4));
        assert_eq!("Zp(2)".parse::<GroupSpec>().unwrap(), GroupSpec::PAdic(2));
        assert!("Zp(4)".parse::<GroupSpec>().is_err());
        assert!("Z^0".parse::<GroupSpec>().is_err());
        assert!("Q".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn display_round_trip() {
        for s in ["1", "Z", "Z^2", "Z/6", "Zp(3)"] {
            let g: GroupSpec = s.parse().unwrap();
            assert_eq!(g.to_string(), s);
            let again: GroupSpec = g.to_string().parse().unwrap();
            assert_eq!(again, g);
        }
        let g: GroupSpec = "<a,b | [a,b]>".parse().unwrap();
        assert_eq!(g.to_string(), "<a,b | abAB>");
        let again: GroupSpec = g.to_string().parse().unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn commutator_sugar() {
        let g: GroupSpec = "<a,b | [a,b]>".parse().unwrap();
        let GroupSpec::Presentation(p) = g else {
            panic!()
        };
        assert_eq!(p.relators.len(), 1);
        assert_eq!(p.relators[0].letters(), &[1, 2, -1, -2]);
    }

    #[test]
    fn powers_and_case_inverse() {
        let g: GroupSpec = "<a | a^4>".parse().unwrap();
        let GroupSpec::Presentation(p) = g else {
            panic!()
        };
        assert_eq!(p.relators[0].letters(), &[1, 1, 1, 1]);

        let g: GroupSpec = "<a,b | aBAb, (ab)^-2>".parse().unwrap();
        let GroupSpec::Presentation(p) = g else {
            panic!()
        };
        assert_eq!(p.relators[0].letters(), &[1, -2, -1, 2]);
        assert_eq!(p.relators[1].letters(), &[-2, -1, -2, -1]);
    }

    #[test]
    fn undeclared_generator_rejected() {
        assert!("<a | ab>".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn builtin_presentations() {
        let p = GroupSpec::FreeAbelian(3).presentation().unwrap();
        assert_eq!(p.generators, vec!["a", "b", "c"]);
        assert_eq!(p.relators.len(), 3);
        let p = GroupSpec::Cyclic(5).presentation().unwrap();
        assert_eq!(p.relators[0].letters(), &[1; 5]);
        let p = GroupSpec::Trivial.presentation().unwrap();
        assert!(p.generators.is_empty() && p.relators.is_empty());
        assert!(GroupSpec::PAdic(2).presentation().is_err());
    }

    #[test]
    fn nested_commutator() {
        let g: GroupSpec = "<a,b,c | [[a,b],c]>".parse().unwrap();
        let GroupSpec::Presentation(p) = g else {
            panic!()
        };
        // [[a,b],c] = (aba⁻¹b⁻¹) c (bab⁻¹a⁻¹) c⁻¹
        assert_eq!(
            p.relators[0].letters(),
            &[1, 2, -1, -2, 3, 2, 1, -2, -1, -3]
        );
    }
}
