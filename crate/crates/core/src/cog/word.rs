use std::fmt;

use thiserror::Error;

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A word in a free group on generators `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FreeWord(Vec<Letter>);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordParseError {
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("unexpected character {0:?} at offset {1}")]
    Unexpected(char, usize),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("exponent at offset {0} is not an integer")]
    BadExponent(usize),
    #[error("exponent {0} is too large")]
    ExponentTooLarge(i64),
    #[error("word expands to more than {MAX_PARSED_LENGTH} letters")]
    TooLong,
    #[error("nesting deeper than {MAX_DEPTH}")]
    TooDeep,
}

/// Largest expanded length of a parsed word.
pub const MAX_PARSED_LENGTH: usize = 1 << 20;
/// Largest absolute exponent accepted by the parser. Equal to the length cap
/// so that every parsed word prints back to text the parser accepts.
pub const MAX_EXPONENT: i64 = MAX_PARSED_LENGTH as i64;
/// Deepest bracket nesting accepted by the parser.
pub const MAX_DEPTH: usize = 128;

fn checked_len(n: usize) -> Result<(), WordParseError> {
    if n > MAX_PARSED_LENGTH {
        Err(WordParseError::TooLong)
    } else {
        Ok(())
    }
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord(Vec::new())
    }

    pub fn gen(g: usize) -> Self {
        FreeWord(vec![Letter::new(g, false)])
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        FreeWord(letters)
    }

    /// Builds a word from `(generator, exponent)` syllables.
    pub fn from_powers(powers: &[(usize, i64)]) -> Self {
        let mut w = FreeWord::identity();
        for &(g, e) in powers {
            w = w.mul(&FreeWord::gen(g).pow(e));
        }
        w
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeWord(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// Product, freely reduced at the junction.
    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut out = self.clone();
        out.mul_assign(other);
        out
    }

    fn mul_assign(&mut self, other: &FreeWord) {
        for &l in &other.0 {
            if self.0.last() == Some(&l.inv()) {
                self.0.pop();
            } else {
                self.0.push(l);
            }
        }
    }

    pub fn pow(&self, n: i64) -> FreeWord {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeWord::identity();
        for _ in 0..n.unsigned_abs() {
            out.mul_assign(&base);
        }
        out
    }

    /// `self^-1 other^-1 self other`.
    pub fn commutator(&self, other: &FreeWord) -> FreeWord {
        self.inverse().mul(&other.inverse()).mul(self).mul(other)
    }

    /// `other^-1 self other`.
    pub fn conjugate_by(&self, other: &FreeWord) -> FreeWord {
        other.inverse().mul(self).mul(other)
    }

    pub fn free_reduce(&self) -> FreeWord {
        FreeWord::identity().mul(self)
    }

    /// Free and cyclic reduction.
    pub fn cyclic_reduce(&self) -> FreeWord {
        let w = self.free_reduce().0;
        let (mut i, mut j) = (0, w.len());
        while j - i >= 2 && w[i] == w[j - 1].inv() {
            i += 1;
            j -= 1;
        }
        FreeWord(w[i..j].to_vec())
    }

    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.0.iter().filter(|l| l.gen == g).map(|l| l.exponent()).sum()
    }

    /// Number of letters `g` or `g^-1`.
    pub fn occurrences(&self, g: usize) -> usize {
        self.0.iter().filter(|l| l.gen == g).count()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.gen).max()
    }

    /// Replaces every generator `g` by `images[g]`.
    pub fn substitute(&self, images: &[FreeWord]) -> FreeWord {
        let mut out = FreeWord::identity();
        for l in &self.0 {
            let img = &images[l.gen];
            out = out.mul(&if l.inverse { img.inverse() } else { img.clone() });
        }
        out
    }

    /// Renames generators with `f`.
    pub fn map_generators(&self, f: impl Fn(usize) -> usize) -> FreeWord {
        FreeWord(self.0.iter().map(|l| Letter::new(f(l.gen), l.inverse)).collect())
    }

    /// All cyclic rotations.
    pub fn rotations(&self) -> impl Iterator<Item = FreeWord> + '_ {
        let n = self.0.len().max(1);
        (0..n).map(move |k| {
            let mut v = self.0[k.min(self.0.len())..].to_vec();
            v.extend_from_slice(&self.0[..k.min(self.0.len())]);
            FreeWord(v)
        })
    }

    /// Writes the word with `^` exponents for runs, e.g. `a^2 b^-1 a`.
    pub fn format(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            let e = (j - i) as i64 * l.exponent();
            let name = names.get(l.gen).cloned().unwrap_or_else(|| format!("#{}", l.gen));
            parts.push(if e == 1 { name } else { format!("{name}^{e}") });
            i = j;
        }
        parts.join(" ")
    }

    /// Parses a word over the given generator names.
    ///
    /// Grammar: factors separated by whitespace or `*`; a factor is a name,
    /// `1` (the identity), a parenthesised word, or a commutator `[u, v]`
    /// meaning `u^-1 v^-1 u v`; any factor may carry `^n` with `n` a signed
    /// integer.
    pub fn parse(text: &str, names: &[String]) -> Result<FreeWord, WordParseError> {
        let mut p = Parser { chars: text.char_indices().collect(), pos: 0, depth: 0, names };
        let w = p.word()?;
        p.skip_ws();
        match p.peek() {
            None => Ok(w),
            Some((off, c)) => Err(WordParseError::Unexpected(c, off)),
        }
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..=self.max_generator().unwrap_or(0)).map(|g| format!("x{g}")).collect();
        write!(f, "FreeWord({})", self.format(&names))
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    depth: usize,
    names: &'a [String],
}

fn is_ident(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

impl Parser<'_> {
    fn peek(&self) -> Option<(usize, char)> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some((_, c)) if c.is_whitespace() || c == '*' || c == '.') {
            self.pos += 1;
        }
    }

    fn word(&mut self) -> Result<FreeWord, WordParseError> {
        let mut w = FreeWord::identity();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some((_, ')')) | Some((_, ']')) | Some((_, ',')) => return Ok(w),
                _ => {
                    let f = self.factor()?;
                    checked_len(w.len() + f.len())?;
                    w.mul_assign(&f);
                }
            }
        }
    }

    fn factor(&mut self) -> Result<FreeWord, WordParseError> {
        let (off, c) = self.peek().ok_or(WordParseError::UnexpectedEnd)?;
        let base = if c == '(' {
            self.pos += 1;
            let w = self.nested(Self::word)?;
            self.expect(')')?;
            w
        } else if c == '[' {
            self.pos += 1;
            let u = self.nested(Self::word)?;
            self.expect(',')?;
            let v = self.nested(Self::word)?;
            self.expect(']')?;
            checked_len(2 * (u.len() + v.len()))?;
            u.commutator(&v)
        } else if is_ident(c) {
            let start = self.pos;
            while matches!(self.peek(), Some((_, c)) if is_ident(c)) {
                self.pos += 1;
            }
            let name: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
            match self.names.iter().position(|n| *n == name) {
                Some(g) => FreeWord::gen(g),
                None if name == "1" => FreeWord::identity(),
                None => return Err(WordParseError::UnknownGenerator(name)),
            }
        } else {
            return Err(WordParseError::Unexpected(c, off));
        };
        self.skip_inline_ws();
        if let Some((_, '^')) = self.peek() {
            self.pos += 1;
            self.skip_inline_ws();
            let e = self.exponent()?;
            checked_len(base.len().saturating_mul(e.unsigned_abs() as usize))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn nested(&mut self, f: fn(&mut Self) -> Result<FreeWord, WordParseError>) -> Result<FreeWord, WordParseError> {
        if self.depth >= MAX_DEPTH {
            return Err(WordParseError::TooDeep);
        }
        self.depth += 1;
        let w = f(self);
        self.depth -= 1;
        w
    }

    fn skip_inline_ws(&mut self) {
        while matches!(self.peek(), Some((_, c)) if c == ' ' || c == '\t') {
            self.pos += 1;
        }
    }

    fn exponent(&mut self) -> Result<i64, WordParseError> {
        let off = self.peek().map_or(0, |(o, _)| o);
        let start = self.pos;
        if matches!(self.peek(), Some((_, '-')) | Some((_, '+'))) {
            self.pos += 1;
        }
        while matches!(self.peek(), Some((_, c)) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        let e: i64 = text.parse().map_err(|_| WordParseError::BadExponent(off))?;
        if e.unsigned_abs() > MAX_EXPONENT as u64 {
            return Err(WordParseError::ExponentTooLarge(e));
        }
        Ok(e)
    }

    fn expect(&mut self, want: char) -> Result<(), WordParseError> {
        self.skip_ws();
        match self.peek() {
            Some((_, c)) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some((off, c)) => Err(WordParseError::Unexpected(c, off)),
            None => Err(WordParseError::UnexpectedEnd),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn names(n: &[&str]) -> Vec<String> {
        n.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parse_forms() {
        let n = names(&["a", "b"]);
        let w = FreeWord::parse("a^2 b^-1 a", &n).unwrap();
        assert_eq!(w.format(&n), "a^2 b^-1 a");
        assert_eq!(FreeWord::parse("[a,b]", &n).unwrap().format(&n), "a^-1 b^-1 a b");
        assert_eq!(FreeWord::parse("(a b)^3", &n).unwrap().len(), 6);
        assert_eq!(FreeWord::parse("a a^-1", &n).unwrap(), FreeWord::identity());
        assert_eq!(FreeWord::parse("1", &n).unwrap(), FreeWord::identity());
        assert_eq!(FreeWord::parse("a*b", &n).unwrap(), FreeWord::parse("a b", &n).unwrap());
        assert!(matches!(FreeWord::parse("c", &n), Err(WordParseError::UnknownGenerator(_))));
        assert!(FreeWord::parse("(a", &n).is_err());
        assert!(FreeWord::parse("a^x", &n).is_err());
        assert!(FreeWord::parse("a^99999999", &n).is_err());
    }

    #[test]
    fn parser_limits() {
        let n = names(&["a"]);
        assert_eq!(FreeWord::parse("((a^9999)^9999)", &n), Err(WordParseError::TooLong));
        let deep = format!("{}a{}", "(".repeat(MAX_DEPTH + 1), ")".repeat(MAX_DEPTH + 1));
        assert_eq!(FreeWord::parse(&deep, &n), Err(WordParseError::TooDeep));
        let ok = format!("{}a{}", "(".repeat(MAX_DEPTH), ")".repeat(MAX_DEPTH));
        assert_eq!(FreeWord::parse(&ok, &n).unwrap().len(), 1);
        assert!(matches!(FreeWord::parse("a^-9223372036854775808", &n), Err(WordParseError::ExponentTooLarge(_))));
        // Adjacent powers merge when printed; the merged form must reparse.
        let w = FreeWord::parse("a^9000 a^9000", &n).unwrap();
        assert_eq!(FreeWord::parse(&w.format(&n), &n).unwrap(), w);
    }

    #[test]
    fn reductions() {
        let n = names(&["a", "b"]);
        let w = FreeWord::parse("b a b^-1", &n).unwrap();
        assert_eq!(w.cyclic_reduce(), FreeWord::gen(0));
        assert_eq!(w.exponent_sum(1), 0);
        assert_eq!(w.occurrences(1), 2);
    }

    fn word_strategy() -> impl Strategy<Value = FreeWord> {
        proptest::collection::vec((0usize..3, any::<bool>()), 0..12)
            .prop_map(|v| FreeWord::from_letters(v.into_iter().map(|(g, i)| Letter::new(g, i)).collect()))
    }

    proptest! {
        #[test]
        fn format_parse_round_trip(w in word_strategy()) {
            let n = names(&["a", "b", "c"]);
            let w = w.free_reduce();
            prop_assert_eq!(FreeWord::parse(&w.format(&n), &n).unwrap(), w);
        }

        #[test]
        fn inverse_cancels(w in word_strategy()) {
            prop_assert!(w.mul(&w.inverse()).is_empty());
        }

        #[test]
        fn exponent_sums_are_additive(u in word_strategy(), v in word_strategy()) {
            for g in 0..3 {
                prop_assert_eq!(u.mul(&v).exponent_sum(g), u.exponent_sum(g) + v.exponent_sum(g));
            }
        }
    }
}
