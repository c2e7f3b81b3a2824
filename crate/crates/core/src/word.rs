//! Free-group words over quandle generators.
//!
//! Quandle elements of a presented quandle are written `a^w` with `a` a
//! generator and `w` a freely reduced word. Words are stored flat and reduced
//! on construction, so structural equality is equality in the free group.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// Dense generator index, `0..g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen(pub u32);

impl Gen {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A generator together with its display name.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorSymbol {
    pub id: Gen,
    pub name: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn from_i64(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: Gen,
    pub sign: Sign,
}

impl Letter {
    pub fn pos(gen: Gen) -> Letter {
        Letter {
            gen,
            sign: Sign::Pos,
        }
    }

    pub fn neg(gen: Gen) -> Letter {
        Letter {
            gen,
            sign: Sign::Neg,
        }
    }

    pub fn inverse(self) -> Letter {
        Letter {
            gen: self.gen,
            sign: self.sign.flip(),
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.sign != other.sign
    }
}

/// A freely reduced word in the free group on the generators.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupWord(Vec<Letter>);

/// Freely reduces a letter sequence (stack-based cancellation).
pub fn free_reduce<I: IntoIterator<Item = Letter>>(letters: I) -> GroupWord {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        match out.last() {
            Some(&top) if top.cancels(l) => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    GroupWord(out)
}

impl GroupWord {
    pub fn empty() -> GroupWord {
        GroupWord(Vec::new())
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> GroupWord {
        free_reduce(letters)
    }

    pub fn letter(l: Letter) -> GroupWord {
        GroupWord(vec![l])
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

    /// Reversed word with every sign flipped.
    pub fn invert(&self) -> GroupWord {
        GroupWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Reduced concatenation `self · other`.
    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        free_reduce(self.0.iter().chain(other.0.iter()).copied())
    }

    /// `self^n` for any integer `n`; negative powers use the inverse word.
    pub fn pow(&self, n: i64) -> GroupWord {
        let base = if n < 0 { self.invert() } else { self.clone() };
        free_reduce(
            std::iter::repeat_n(base.0.iter().copied(), n.unsigned_abs() as usize).flatten(),
        )
    }

    pub fn generators(&self) -> impl Iterator<Item = Gen> + '_ {
        self.0.iter().map(|l| l.gen)
    }

    /// Renders with the given generator names, inverse letters primed.
    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

impl Mul for &GroupWord {
    type Output = GroupWord;
    fn mul(self, rhs: &GroupWord) -> GroupWord {
        self.concat(rhs)
    }
}

impl FromIterator<Letter> for GroupWord {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        free_reduce(iter)
    }
}

/// `n` copies of the positive letter `g`.
pub fn power_word(g: Gen, n: i64) -> Result<GroupWord> {
    if n <= 0 {
        return Err(Error::NonPositivePower(n));
    }
    Ok(GroupWord(vec![Letter::pos(g); n as usize]))
}

pub struct WordDisplay<'a> {
    word: &'a GroupWord,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.word.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match self.names.get(l.gen.index()) {
                Some(n) => f.write_str(n)?,
                None => write!(f, "#{}", l.gen.0)?,
            }
            if l.sign == Sign::Neg {
                f.write_str("'")?;
            }
        }
        Ok(())
    }
}

/// The quandle expression `base^exponent`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuandleExpr {
    pub base: Gen,
    pub exponent: GroupWord,
}

impl QuandleExpr {
    pub fn generator(base: Gen) -> QuandleExpr {
        QuandleExpr {
            base,
            exponent: GroupWord::empty(),
        }
    }

    /// `(a^u) ▷^{±1} (b^v) = a^{u v̄ b^{±1} v}`.
    pub fn act(&self, by: &QuandleExpr, sign: Sign) -> QuandleExpr {
        let v = &by.exponent;
        let v_inv = v.invert();
        let letters = self
            .exponent
            .letters()
            .iter()
            .copied()
            .chain(v_inv.letters().iter().copied())
            .chain(std::iter::once(Letter { gen: by.base, sign }))
            .chain(v.letters().iter().copied());
        QuandleExpr {
            base: self.base,
            exponent: free_reduce(letters),
        }
    }
}

/// Parses the word text syntax against a list of generator names.
///
/// Identifiers are split into generator names by longest-prefix matching, so
/// `ab` means `a b` unless `ab` itself is a generator. `'` inverts the
/// preceding letter or group, `^n` raises it to an integer power.
pub fn parse_word(text: &str, names: &[String]) -> Result<GroupWord> {
    let mut p = WordParser {
        chars: text.chars().collect(),
        pos: 0,
        names,
    };
    let w = p.sequence(0)?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.err(format!("unexpected `{}`", p.chars[p.pos])));
    }
    Ok(w)
}

struct WordParser<'a> {
    chars: Vec<char>,
    pos: usize,
    names: &'a [String],
}

impl WordParser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::syntax(1, self.pos + 1, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn sequence(&mut self, depth: usize) -> Result<GroupWord> {
        let mut letters: Vec<Letter> = Vec::new();
        loop {
            match self.peek() {
                None => break,
                Some(')') if depth > 0 => break,
                Some('(') => {
                    self.pos += 1;
                    let inner = self.sequence(depth + 1)?;
                    if self.peek() != Some(')') {
                        return Err(self.err("expected `)`"));
                    }
                    self.pos += 1;
                    let atom = self.postfix(inner)?;
                    letters.extend_from_slice(atom.letters());
                }
                Some(c) if c.is_alphabetic() || c == '_' => {
                    let start = self.pos;
                    while self.pos < self.chars.len()
                        && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
                    {
                        self.pos += 1;
                    }
                    let ident: String = self.chars[start..self.pos].iter().collect();
                    let mut gens = self.split_ident(&ident)?;
                    let last = gens.pop().expect("identifier is non-empty");
                    letters.extend(gens.into_iter().map(Letter::pos));
                    let atom = self.postfix(GroupWord::letter(Letter::pos(last)))?;
                    letters.extend_from_slice(atom.letters());
                }
                Some(c) => return Err(self.err(format!("unexpected `{c}`"))),
            }
        }
        Ok(free_reduce(letters))
    }

    fn postfix(&mut self, mut atom: GroupWord) -> Result<GroupWord> {
        loop {
            match self.chars.get(self.pos) {
                Some('\'') => {
                    self.pos += 1;
                    atom = atom.invert();
                }
                Some('^') => {
                    self.pos += 1;
                    let start = self.pos;
                    if self.chars.get(self.pos) == Some(&'-') {
                        self.pos += 1;
                    }
                    while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    let s: String = self.chars[start..self.pos].iter().collect();
                    let n: i64 = s
                        .parse()
                        .map_err(|_| Error::syntax(1, start + 1, "expected integer exponent"))?;
                    atom = atom.pow(n);
                }
                _ => return Ok(atom),
            }
        }
    }

    fn split_ident(&self, ident: &str) -> Result<Vec<Gen>> {
        let lookup = |s: &str| self.names.iter().position(|n| n == s);
        if let Some(i) = lookup(ident) {
            return Ok(vec![Gen(i as u32)]);
        }
        let mut out = Vec::new();
        let mut rest = ident;
        while !rest.is_empty() {
            let hit = (1..=rest.len())
                .rev()
                .filter(|&l| rest.is_char_boundary(l))
                .find_map(|l| lookup(&rest[..l]).map(|i| (l, i)));
            match hit {
                Some((l, i)) => {
                    out.push(Gen(i as u32));
                    rest = &rest[l..];
                }
                None => return Err(Error::UnknownGenerator(rest.to_string())),
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a() -> Gen {
        Gen(0)
    }
    fn b() -> Gen {
        Gen(1)
    }
    fn c() -> Gen {
        Gen(2)
    }

    fn names() -> Vec<String> {
        ["a", "b", "c", "u", "v"]
            .iter()
            .map(|s| s.to_string())
            .collect()
    }

    #[test]
    fn reduce_examples() {
        let w = free_reduce([Letter::pos(a()), Letter::neg(a()), Letter::pos(b())]);
        assert_eq!(w.letters(), &[Letter::pos(b())]);
        assert!(free_reduce([]).is_empty());
        let w = free_reduce([
            Letter::pos(a()),
            Letter::pos(b()),
            Letter::neg(b()),
            Letter::neg(a()),
        ]);
        assert!(w.is_empty());
    }

    #[test]
    fn invert_examples() {
        let w = GroupWord::from_letters([Letter::pos(a()), Letter::neg(b())]);
        assert_eq!(w.invert().letters(), &[Letter::pos(b()), Letter::neg(a())]);
        assert!(GroupWord::empty().invert().is_empty());
        let ccc = power_word(c(), 3).unwrap();
        assert_eq!(ccc.invert().letters(), &[Letter::neg(c()); 3]);
    }

    #[test]
    fn act_matches_reassociation() {
        let ea = QuandleExpr::generator(a());
        let eb = QuandleExpr::generator(b());
        assert_eq!(
            ea.act(&eb, Sign::Pos).exponent.letters(),
            &[Letter::pos(b())]
        );

        // a^u ▷ b^v = a^{u v̄ b v}
        let n = names();
        let u = Gen(3);
        let v = Gen(4);
        let x = QuandleExpr {
            base: a(),
            exponent: GroupWord::letter(Letter::pos(u)),
        };
        let y = QuandleExpr {
            base: b(),
            exponent: GroupWord::letter(Letter::pos(v)),
        };
        assert_eq!(
            x.act(&y, Sign::Pos).exponent,
            parse_word("u v' b v", &n).unwrap()
        );
        assert_eq!(
            x.act(&y, Sign::Neg).exponent,
            parse_word("u v' b' v", &n).unwrap()
        );
    }

    #[test]
    fn power_word_examples() {
        assert_eq!(power_word(c(), 3).unwrap().len(), 3);
        assert_eq!(power_word(a(), 1).unwrap().letters(), &[Letter::pos(a())]);
        assert_eq!(
            power_word(Gen(3), 2).unwrap().letters(),
            &[Letter::pos(Gen(3)); 2]
        );
        assert_eq!(power_word(a(), 0), Err(Error::NonPositivePower(0)));
        assert!(power_word(a(), -2).is_err());
    }

    #[test]
    fn parse_syntax() {
        let n = names();
        let ab = GroupWord::from_letters([Letter::pos(a()), Letter::pos(b())]);
        assert_eq!(parse_word("(ab)^3", &n).unwrap(), ab.pow(3));
        assert_eq!(parse_word("(ab)^-1", &n).unwrap(), ab.invert());
        assert_eq!(parse_word("c^2", &n).unwrap(), power_word(c(), 2).unwrap());
        assert_eq!(
            parse_word(" a  b c' ", &n).unwrap(),
            parse_word("abc'", &n).unwrap()
        );
        assert_eq!(parse_word("a a'", &n).unwrap(), GroupWord::empty());
        assert_eq!(parse_word("(ab)'", &n).unwrap(), ab.invert());
        assert!(matches!(
            parse_word("a q", &n),
            Err(Error::UnknownGenerator(_))
        ));
        assert!(matches!(parse_word("(ab", &n), Err(Error::Syntax { .. })));
    }

    #[test]
    fn longest_prefix_names() {
        let n: Vec<String> = ["x1", "x10", "x2"].iter().map(|s| s.to_string()).collect();
        let w = parse_word("x10 x1x2", &n).unwrap();
        assert_eq!(
            w.letters(),
            &[
                Letter::pos(Gen(1)),
                Letter::pos(Gen(0)),
                Letter::pos(Gen(2))
            ]
        );
    }

    fn letters() -> impl Strategy<Value = Vec<Letter>> {
        prop::collection::vec(
            (0u32..3, any::<bool>()).prop_map(|(g, s)| Letter {
                gen: Gen(g),
                sign: if s { Sign::Pos } else { Sign::Neg },
            }),
            0..64,
        )
    }

    proptest! {
        #[test]
        fn reduce_idempotent(ls in letters()) {
            let w = free_reduce(ls);
            prop_assert_eq!(free_reduce(w.letters().iter().copied()), w.clone());
            prop_assert!(w.letters().windows(2).all(|p| !p[0].cancels(p[1])));
        }

        #[test]
        fn invert_is_involutive_antihomomorphism(u in letters(), v in letters()) {
            let u = free_reduce(u);
            let v = free_reduce(v);
            prop_assert_eq!(u.invert().invert(), u.clone());
            prop_assert_eq!((&u * &v).invert(), &v.invert() * &u.invert());
            prop_assert!((&u * &u.invert()).is_empty());
        }
    }
}
