//! Words over generators and their formal inverses.
//!
//! Text syntax: whitespace-separated symbols; `x^-1`, `x'` or `x⁻¹` for an
//! inverse; `x^n` for an integer power; `x^y` for the conjugate `y⁻¹ x y`;
//! `[x,y]` for the commutator `x⁻¹ y⁻¹ x y`; parentheses group.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// A generator or its formal inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub symbol: String,
    pub inverse: bool,
}

impl Atom {
    pub fn new(symbol: impl Into<String>, inverse: bool) -> Self {
        Atom { symbol: symbol.into(), inverse }
    }

    pub fn inv(&self) -> Atom {
        Atom { symbol: self.symbol.clone(), inverse: !self.inverse }
    }

    pub fn cancels(&self, other: &Atom) -> bool {
        self.symbol == other.symbol && self.inverse != other.inverse
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.symbol)
        } else {
            f.write_str(&self.symbol)
        }
    }
}

/// A word in the free group on the symbols. Not reduced unless asked.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord {
    atoms: Vec<Atom>,
}

impl GroupWord {
    pub fn new(atoms: Vec<Atom>) -> Self {
        GroupWord { atoms }
    }

    pub fn empty() -> Self {
        GroupWord::default()
    }

    pub fn generator(symbol: &str) -> Self {
        GroupWord { atoms: vec![Atom::new(symbol, false)] }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let tokens = tokenize(text)?;
        let mut p = Parser { tokens, pos: 0 };
        let w = p.word()?;
        match p.peek() {
            None => Ok(w),
            Some(t) => Err(Error::WordSyntax(format!("unexpected `{}`", t.text()))),
        }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Reversed word with every atom inverted.
    pub fn inverse(&self) -> GroupWord {
        GroupWord { atoms: self.atoms.iter().rev().map(Atom::inv).collect() }
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        GroupWord { atoms }
    }

    pub fn pow(&self, exp: i64) -> GroupWord {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut atoms = Vec::with_capacity(base.len() * exp.unsigned_abs() as usize);
        for _ in 0..exp.unsigned_abs() {
            atoms.extend(base.atoms.iter().cloned());
        }
        GroupWord { atoms }
    }

    /// `x⁻¹ y⁻¹ x y`.
    pub fn commutator(x: &GroupWord, y: &GroupWord) -> GroupWord {
        x.inverse().concat(&y.inverse()).concat(x).concat(y)
    }

    /// `y⁻¹ x y`.
    pub fn conjugate(x: &GroupWord, y: &GroupWord) -> GroupWord {
        y.inverse().concat(x).concat(y)
    }

    /// Removes adjacent cancelling pairs until none remain.
    pub fn free_reduce(&self) -> GroupWord {
        let mut out: Vec<Atom> = Vec::with_capacity(self.atoms.len());
        for a in &self.atoms {
            if out.last().is_some_and(|b| b.cancels(a)) {
                out.pop();
            } else {
                out.push(a.clone());
            }
        }
        GroupWord { atoms: out }
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.atoms.windows(2).all(|p| !p[0].cancels(&p[1]))
    }

    /// Distinct symbols in order of first appearance.
    pub fn symbols(&self) -> Vec<&str> {
        let mut seen: Vec<&str> = Vec::new();
        for a in &self.atoms {
            if !seen.contains(&a.symbol.as_str()) {
                seen.push(&a.symbol);
            }
        }
        seen
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for GroupWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GroupWord::parse(s)
    }
}

impl FromIterator<Atom> for GroupWord {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> Self {
        GroupWord { atoms: iter.into_iter().collect() }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Ident(String),
    Int(i64),
    Open,
    Close,
    OpenBracket,
    CloseBracket,
    Comma,
    Caret,
    Prime,
}

impl Token {
    fn text(&self) -> String {
        match self {
            Token::Ident(s) => s.clone(),
            Token::Int(n) => n.to_string(),
            Token::Open => "(".into(),
            Token::Close => ")".into(),
            Token::OpenBracket => "[".into(),
            Token::CloseBracket => "]".into(),
            Token::Comma => ",".into(),
            Token::Caret => "^".into(),
            Token::Prime => "'".into(),
        }
    }
}

fn is_special(c: char) -> bool {
    matches!(c, '(' | ')' | '[' | ']' | ',' | '^' | '\'' | '⁻' | '¹') || c.is_whitespace()
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' | ')' | '[' | ']' | ',' | '\'' => {
                chars.next();
                out.push(match c {
                    '(' => Token::Open,
                    ')' => Token::Close,
                    '[' => Token::OpenBracket,
                    ']' => Token::CloseBracket,
                    ',' => Token::Comma,
                    _ => Token::Prime,
                });
            }
            '⁻' => {
                chars.next();
                if chars.next() != Some('¹') {
                    return Err(Error::WordSyntax("`⁻` must be followed by `¹`".into()));
                }
                out.push(Token::Prime);
            }
            '^' => {
                chars.next();
                out.push(Token::Caret);
                // exponent: optional sign and digits
                let mut num = String::new();
                if chars.peek() == Some(&'-') {
                    num.push('-');
                    chars.next();
                }
                while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    num.push(d);
                    chars.next();
                }
                if num == "-" {
                    return Err(Error::WordSyntax("`^-` needs an integer".into()));
                }
                if !num.is_empty() {
                    let n = num.parse().map_err(|_| Error::WordSyntax(format!("bad exponent `{num}`")))?;
                    out.push(Token::Int(n));
                }
            }
            _ => {
                let mut id = String::new();
                while let Some(&d) = chars.peek().filter(|d| !is_special(**d)) {
                    id.push(d);
                    chars.next();
                }
                if id.is_empty() {
                    return Err(Error::WordSyntax(format!("unexpected `{c}`")));
                }
                out.push(Token::Ident(id));
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Token) -> Result<()> {
        match self.bump() {
            Some(u) if u == t => Ok(()),
            Some(u) => Err(Error::WordSyntax(format!("expected `{}`, found `{}`", t.text(), u.text()))),
            None => Err(Error::WordSyntax(format!("expected `{}` at end of input", t.text()))),
        }
    }

    fn word(&mut self) -> Result<GroupWord> {
        let mut w = GroupWord::empty();
        while matches!(self.peek(), Some(Token::Ident(_) | Token::Open | Token::OpenBracket)) {
            w = w.concat(&self.term()?);
        }
        Ok(w)
    }

    fn term(&mut self) -> Result<GroupWord> {
        let mut w = self.primary()?;
        loop {
            match self.peek() {
                Some(Token::Prime) => {
                    self.bump();
                    w = w.inverse();
                }
                Some(Token::Caret) => {
                    self.bump();
                    match self.bump() {
                        Some(Token::Int(n)) => w = w.pow(n),
                        Some(Token::Ident(s)) => w = GroupWord::conjugate(&w, &GroupWord::generator(&s)),
                        Some(Token::Open) => {
                            let y = self.word()?;
                            self.expect(Token::Close)?;
                            w = GroupWord::conjugate(&w, &y);
                        }
                        Some(Token::OpenBracket) => {
                            self.pos -= 1;
                            let y = self.primary()?;
                            w = GroupWord::conjugate(&w, &y);
                        }
                        other => {
                            return Err(Error::WordSyntax(format!(
                                "bad exponent `{}`",
                                other.map_or("end of input".into(), |t| t.text())
                            )))
                        }
                    }
                }
                _ => return Ok(w),
            }
        }
    }

    fn primary(&mut self) -> Result<GroupWord> {
        match self.bump() {
            Some(Token::Ident(s)) => Ok(GroupWord::generator(&s)),
            Some(Token::Open) => {
                let w = self.word()?;
                self.expect(Token::Close)?;
                Ok(w)
            }
            Some(Token::OpenBracket) => {
                let x = self.word()?;
                self.expect(Token::Comma)?;
                let y = self.word()?;
                self.expect(Token::CloseBracket)?;
                Ok(GroupWord::commutator(&x, &y))
            }
            Some(t) => Err(Error::WordSyntax(format!("unexpected `{}`", t.text()))),
            None => Err(Error::WordSyntax("unexpected end of input".into())),
        }
    }
}

/// A substitution of words for generators; unlisted symbols map to themselves.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Endomorphism {
    rules: BTreeMap<String, GroupWord>,
}

impl Endomorphism {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rule(mut self, symbol: &str, image: GroupWord) -> Self {
        self.rules.insert(symbol.to_string(), image);
        self
    }

    /// Parses `a -> a c a, b -> d`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut e = Endomorphism::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (lhs, rhs) = part
                .split_once("->")
                .ok_or_else(|| Error::WordSyntax(format!("rule `{part}` lacks `->`")))?;
            let lhs = lhs.trim();
            if lhs.is_empty() || lhs.chars().any(is_special) {
                return Err(Error::WordSyntax(format!("bad rule head `{lhs}`")));
            }
            e.rules.insert(lhs.to_string(), GroupWord::parse(rhs)?);
        }
        Ok(e)
    }

    pub fn rules(&self) -> &BTreeMap<String, GroupWord> {
        &self.rules
    }

    /// Homomorphic image, without reduction.
    pub fn apply(&self, w: &GroupWord) -> GroupWord {
        let mut atoms = Vec::new();
        for a in w.atoms() {
            match self.rules.get(&a.symbol) {
                Some(img) if a.inverse => atoms.extend(img.inverse().atoms),
                Some(img) => atoms.extend(img.atoms.iter().cloned()),
                None => atoms.push(a.clone()),
            }
        }
        GroupWord { atoms }
    }

    /// `n`-fold iterate.
    pub fn apply_n(&self, w: &GroupWord, n: usize) -> GroupWord {
        (0..n).fold(w.clone(), |acc, _| self.apply(&acc).free_reduce())
    }
}

/// All `σᵏ(r)` for `r` in `base` and `0 ≤ k ≤ n_max`, freely reduced,
/// ordered by `k` and then by position in `base`.
pub fn relator_family(base: &[GroupWord], e: &Endomorphism, n_max: usize) -> Vec<GroupWord> {
    let mut layer: Vec<GroupWord> = base.iter().map(GroupWord::free_reduce).collect();
    let mut out = Vec::with_capacity(base.len() * (n_max + 1));
    for k in 0..=n_max {
        if k > 0 {
            layer = layer.iter().map(|r| e.apply(r).free_reduce()).collect();
        }
        out.extend(layer.iter().cloned());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> GroupWord {
        GroupWord::parse(s).unwrap()
    }

    fn sigma() -> Endomorphism {
        Endomorphism::parse("a -> a c a, b -> d, c -> b, d -> c").unwrap()
    }

    #[test]
    fn parses_sugar() {
        assert_eq!(w("t t^-1").to_string(), "t t^-1");
        assert_eq!(w("t'"), w("t^-1"));
        assert_eq!(w("t⁻¹"), w("t^-1"));
        assert_eq!(w("x^3").to_string(), "x x x");
        assert_eq!(w("x^-2").to_string(), "x^-1 x^-1");
        assert_eq!(w("[x,y]").to_string(), "x^-1 y^-1 x y");
        assert_eq!(w("d^a").to_string(), "a^-1 d a");
        assert_eq!(w("d^([a,c] a)"), w("a^-1 [a,c]^-1 d [a,c] a"));
        assert_eq!(w("(a b)^2").to_string(), "a b a b");
        assert_eq!(w("a1 b1^-1").atoms()[1], Atom::new("b1", true));
        assert!(w("").is_empty());
        assert!(GroupWord::parse("[a b").is_err());
        assert!(GroupWord::parse("a)").is_err());
        assert!(GroupWord::parse("a^").is_err());
    }

    #[test]
    fn free_reduction_examples() {
        assert_eq!(w("t t^-1").free_reduce(), GroupWord::empty());
        assert_eq!(w("a b b^-1 a").free_reduce(), w("a a"));
        assert_eq!(w("a b^-1 c c^-1 b a^-1").free_reduce(), GroupWord::empty());
    }

    #[test]
    fn sigma_images() {
        let s = sigma();
        assert_eq!(s.apply(&w("a")), w("a c a"));
        assert_eq!(s.apply(&w("b c d")), w("d b c"));
        assert_eq!(s.apply_n(&w("a"), 2), w("a c a b a c a"));
        assert_eq!(s.apply(&w("a^-1")), w("a^-1 c^-1 a^-1"));
    }

    #[test]
    fn relator_family_shapes() {
        let base: Vec<GroupWord> =
            ["b c d", "a^2", "[d,d^a]", "[d,d^([a,c] a)]"].iter().map(|s| w(s)).collect();
        let fam = relator_family(&base, &sigma(), 0);
        assert_eq!(fam, base.iter().map(GroupWord::free_reduce).collect::<Vec<_>>());
        assert_eq!(relator_family(&base, &sigma(), 2).len(), 12);
        assert!(relator_family(&[], &sigma(), 3).is_empty());

        let bas = Endomorphism::parse("a -> b, b -> a^2").unwrap();
        let fam = relator_family(&[w("[a,a^b]"), w("[b,b^(a^2)]")], &bas, 2);
        assert_eq!(fam[2], w("[b,b^(a^2)]").free_reduce());
        assert_eq!(fam[3], w("[a^2,(a^2)^(b^2)]").free_reduce());
        assert_eq!(fam[5], w("[b^2,(b^2)^(a^4)]").free_reduce());
    }

    fn atom() -> impl Strategy<Value = Atom> {
        (0..3usize, any::<bool>()).prop_map(|(s, i)| Atom::new(["a", "b", "c"][s], i))
    }

    fn word() -> impl Strategy<Value = GroupWord> {
        prop::collection::vec(atom(), 0..20).prop_map(GroupWord::new)
    }

    proptest! {
        #[test]
        fn reduce_idempotent_and_shrinking(x in word()) {
            let r = x.free_reduce();
            prop_assert!(r.len() <= x.len());
            prop_assert!(r.is_freely_reduced());
            prop_assert_eq!(r.free_reduce(), r);
        }

        #[test]
        fn word_times_inverse_reduces_to_empty(x in word()) {
            prop_assert!(x.concat(&x.inverse()).free_reduce().is_empty());
        }

        #[test]
        fn substitution_is_a_homomorphism(x in word(), y in word()) {
            let s = Endomorphism::parse("a -> a c a, b -> c^-1 b").unwrap();
            prop_assert_eq!(s.apply(&x.concat(&y)), s.apply(&x).concat(&s.apply(&y)));
            prop_assert_eq!(s.apply(&x.inverse()).free_reduce(), s.apply(&x).inverse().free_reduce());
        }

        #[test]
        fn display_round_trips(x in word()) {
            prop_assert_eq!(GroupWord::parse(&x.to_string()).unwrap(), x);
        }
    }
}
