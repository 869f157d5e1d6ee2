//! Freely reduced words in the free group on `a` and `b`.

use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse word {input:?}: {reason}")]
pub struct WordParseError {
    pub input: String,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    A,
    B,
}

impl Gen {
    pub fn other(self) -> Gen {
        match self {
            Gen::A => Gen::B,
            Gen::B => Gen::A,
        }
    }

    pub fn name(self) -> char {
        match self {
            Gen::A => 'a',
            Gen::B => 'b',
        }
    }
}

/// A word stored as syllables `g^e` with `e != 0` and adjacent syllables on
/// different generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FreeWord {
    syllables: Vec<(Gen, i64)>,
}

impl FreeWord {
    pub fn empty() -> Self {
        FreeWord::default()
    }

    pub fn gen(g: Gen) -> Self {
        FreeWord { syllables: vec![(g, 1)] }
    }

    pub fn a() -> Self {
        Self::gen(Gen::A)
    }

    pub fn b() -> Self {
        Self::gen(Gen::B)
    }

    /// Freely reduce an arbitrary syllable sequence.
    pub fn from_syllables(items: impl IntoIterator<Item = (Gen, i64)>) -> Self {
        let mut w = FreeWord::empty();
        for (g, e) in items {
            w.push(g, e);
        }
        w
    }

    fn push(&mut self, g: Gen, e: i64) {
        if e == 0 {
            return;
        }
        match self.syllables.last_mut() {
            Some((h, f)) if *h == g => {
                *f += e;
                if *f == 0 {
                    self.syllables.pop();
                }
            }
            _ => self.syllables.push((g, e)),
        }
    }

    pub fn syllables(&self) -> &[(Gen, i64)] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters, counting `g^e` as `|e|` letters.
    pub fn len(&self) -> usize {
        self.syllables.iter().map(|(_, e)| e.unsigned_abs() as usize).sum()
    }

    /// The word as a sequence of single letters `g^{+-1}`.
    pub fn letters(&self) -> Vec<(Gen, i64)> {
        self.syllables
            .iter()
            .flat_map(|&(g, e)| std::iter::repeat((g, e.signum())).take(e.unsigned_abs() as usize))
            .collect()
    }

    pub fn multiply(&self, other: &FreeWord) -> FreeWord {
        let mut w = self.clone();
        for &(g, e) in &other.syllables {
            w.push(g, e);
        }
        w
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord { syllables: self.syllables.iter().rev().map(|&(g, e)| (g, -e)).collect() }
    }

    pub fn pow(&self, k: i64) -> FreeWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = FreeWord::empty();
        for _ in 0..k.unsigned_abs() {
            w = w.multiply(&base);
        }
        w
    }

    /// Conjugate to a cyclically reduced word (first and last syllables on
    /// different generators, merged when they agree).
    pub fn cyclically_reduced(&self) -> FreeWord {
        let mut s = self.syllables.clone();
        while s.len() >= 2 && s[0].0 == s[s.len() - 1].0 {
            let (_, e) = s.pop().expect("len >= 2");
            s[0].1 += e;
            if s[0].1 == 0 {
                s.remove(0);
            }
        }
        FreeWord { syllables: s }
    }

    /// All freely reduced words with at most `max_len` letters, shortest
    /// first and in a fixed order within each length.
    pub fn all_up_to(max_len: usize) -> Vec<FreeWord> {
        let mut out = vec![FreeWord::empty()];
        let mut layer = vec![Vec::<(Gen, i64)>::new()];
        let steps = [(Gen::A, 1), (Gen::A, -1), (Gen::B, 1), (Gen::B, -1)];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for letters in &layer {
                for &(g, e) in &steps {
                    if letters.last() == Some(&(g, -e)) {
                        continue;
                    }
                    let mut l = letters.clone();
                    l.push((g, e));
                    next.push(l);
                }
            }
            out.extend(next.iter().map(|l| FreeWord::from_syllables(l.iter().copied())));
            layer = next;
        }
        out
    }
}

impl fmt::Display for FreeWord {
    /// Caret form, e.g. `a b^-1 a^-1 b`; the empty word prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .syllables
            .iter()
            .map(|&(g, e)| if e == 1 { g.name().to_string() } else { format!("{}^{}", g.name(), e) })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for FreeWord {
    type Err = WordParseError;

    /// Accepts the caret form (`a b^-1 a^-1 b`, `a^2b`), the compact form
    /// with uppercase letters for inverses (`aB Ab`), and `1` or the empty
    /// string for the identity.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| WordParseError { input: s.to_string(), reason: reason.to_string() };
        let trimmed = s.trim();
        if trimmed.is_empty() || trimmed == "1" {
            return Ok(FreeWord::empty());
        }
        let chars: Vec<char> = trimmed.chars().collect();
        let mut w = FreeWord::empty();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            i += 1;
            let (g, sign) = match c {
                'a' => (Gen::A, 1),
                'b' => (Gen::B, 1),
                'A' => (Gen::A, -1),
                'B' => (Gen::B, -1),
                c if c.is_whitespace() || c == '*' || c == '.' => continue,
                _ => return Err(err(&format!("unexpected character {c:?}"))),
            };
            let mut exp = 1i64;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let start = i;
                if i < chars.len() && (chars[i] == '-' || chars[i] == '+') {
                    i += 1;
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                exp = text.parse().map_err(|_| err(&format!("bad exponent {text:?}")))?;
                if exp == 0 {
                    return Err(err("zero exponent"));
                }
            }
            w.push(g, sign * exp);
        }
        Ok(w)
    }
}
