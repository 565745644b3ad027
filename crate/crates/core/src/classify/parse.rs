//! Recursive-descent parser for the one-line descriptor language:
//!
//! ```text
//! descriptor := term ('+' term)*
//! term       := atom ('^' card)?
//! atom       := 'Z' | 'Q' | 'ProdZp' | 'C(' p ',' k ')' | 'Prufer(' p ')' | 'Jp(' p ')'
//!             | 'T[' p ':' (k|'inf') (',' p ':' (k|'inf'))* ']' | 'Bp(' p ')'
//!             | 'TorsComplete(' p ',' ('bounded'|'unbounded') ')'
//!             | 'Endorigid(' card ',' ('pw0'|'pwpos') ')'
//!             | 'TotProj(' p ')' | 'Pw1Proj(' p ')' | 'Pierce(' p ')'
//! card       := integer | 'aleph0' | 'continuum' | 'abovecontinuum'
//! ```
//!
//! `C(*,k)` and `Prufer(*)` stand for one copy per prime.

use super::cardinal::Cardinal;
use super::descriptor::{Atom, GroupDescriptor, Height, PrimeSpec, TypeVector};
use crate::error::ParseError;
use crate::witness::carriers::is_prime;

/// Largest finite multiplicity or rank accepted.
pub const MAX_FINITE_CARDINAL: u64 = 1000;
/// Largest exponent accepted in `C(p,k)` and in a type.
pub const MAX_EXPONENT: u32 = 64;

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error<T>(&self, position: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.text[self.pos..]
                .chars()
                .next()
                .map_or(1, char::len_utf8);
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            self.error(self.pos, format!("expected {:?}", token))
        }
    }

    fn word(&mut self) -> (usize, &'a str) {
        self.skip_ws();
        let start = self.pos;
        let len = self.text[start..]
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(self.text.len() - start);
        self.pos += len;
        (start, &self.text[start..start + len])
    }

    fn number(&mut self, what: &str) -> Result<(usize, u64), ParseError> {
        let (start, w) = self.word();
        if w.is_empty() || !w.bytes().all(|b| b.is_ascii_digit()) {
            return self.error(start, format!("expected {}", what));
        }
        match w.parse() {
            Ok(n) => Ok((start, n)),
            Err(_) => self.error(start, format!("{} is too large", what)),
        }
    }

    fn prime(&mut self) -> Result<u64, ParseError> {
        let (start, p) = self.number("a prime")?;
        if !is_prime(p) {
            return self.error(start, format!("{} is not prime", p));
        }
        Ok(p)
    }

    fn prime_or_every(&mut self) -> Result<PrimeSpec, ParseError> {
        if self.eat("*") {
            Ok(PrimeSpec::Every)
        } else {
            self.prime().map(PrimeSpec::Specific)
        }
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        let (start, k) = self.number("an exponent")?;
        if k > MAX_EXPONENT as u64 {
            return self.error(start, format!("exponent {} exceeds {}", k, MAX_EXPONENT));
        }
        Ok(k as u32)
    }

    fn cardinal(&mut self) -> Result<Cardinal, ParseError> {
        let (start, w) = self.word();
        let c: Cardinal = match w.parse() {
            Ok(c) => c,
            Err(_) => return self.error(start, "expected a cardinal"),
        };
        match c.as_u64() {
            Some(n) if n > MAX_FINITE_CARDINAL => self.error(
                start,
                format!("finite cardinal {} exceeds {}", n, MAX_FINITE_CARDINAL),
            ),
            None if c.is_finite() => self.error(
                start,
                format!("finite cardinal exceeds {}", MAX_FINITE_CARDINAL),
            ),
            _ => Ok(c),
        }
    }

    fn choice(&mut self, options: [&str; 2]) -> Result<bool, ParseError> {
        let (start, w) = self.word();
        if w == options[0] {
            Ok(true)
        } else if w == options[1] {
            Ok(false)
        } else {
            self.error(
                start,
                format!("expected {:?} or {:?}", options[0], options[1]),
            )
        }
    }

    fn type_vector(&mut self) -> Result<TypeVector, ParseError> {
        let mut entries = Vec::new();
        loop {
            let p = self.prime()?;
            self.expect(":")?;
            let h = if self.eat("inf") {
                Height::Infinite
            } else {
                Height::Finite(self.exponent()?)
            };
            entries.push((p, h));
            if !self.eat(",") {
                break;
            }
        }
        self.expect("]")?;
        Ok(TypeVector::new(entries))
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        self.skip_ws();
        if self.eat("T[") {
            return self.type_vector().map(Atom::RankOne);
        }
        let (start, name) = self.word();
        let atom = match name {
            "Z" => return Ok(Atom::FreeZ),
            "Q" => return Ok(Atom::Rationals),
            "ProdZp" => return Ok(Atom::ProductZp),
            "" => return self.error(start, "expected an atom"),
            "C" | "Prufer" | "Jp" | "Bp" | "TorsComplete" | "Endorigid" | "TotProj" | "Pw1Proj"
            | "Pierce" => {
                self.expect("(")?;
                match name {
                    "C" => {
                        let p = self.prime_or_every()?;
                        self.expect(",")?;
                        let at = self.pos;
                        let k = self.exponent()?;
                        if k == 0 {
                            return self.error(at, "cyclic exponent must be at least 1");
                        }
                        Atom::Cyclic { p, k }
                    }
                    "Prufer" => Atom::Prufer(self.prime_or_every()?),
                    "Jp" => Atom::PAdic(self.prime()?),
                    "Bp" => Atom::StandardBasic(self.prime()?),
                    "TorsComplete" => {
                        let p = self.prime()?;
                        self.expect(",")?;
                        let bounded = self.choice(["bounded", "unbounded"])?;
                        Atom::TorsionComplete { p, bounded }
                    }
                    "Endorigid" => {
                        let at = self.pos;
                        let rank = self.cardinal()?;
                        if rank.is_zero() {
                            return self.error(at, "an endorigid group has positive rank");
                        }
                        self.expect(",")?;
                        let pomega_all_zero = self.choice(["pw0", "pwpos"])?;
                        Atom::EndorigidTF {
                            rank,
                            pomega_all_zero,
                        }
                    }
                    "TotProj" => Atom::TotallyProjective(self.prime()?),
                    "Pw1Proj" => Atom::POmegaPlus1Projective(self.prime()?),
                    _ => Atom::PierceHopfian(self.prime()?),
                }
            }
            _ => return self.error(start, format!("unknown atom {:?}", name)),
        };
        self.expect(")")?;
        Ok(atom)
    }

    fn term(&mut self) -> Result<(Atom, Cardinal), ParseError> {
        let atom = self.atom()?;
        let mult = if self.eat("^") {
            self.cardinal()?
        } else {
            Cardinal::one()
        };
        Ok((atom, mult))
    }
}

pub fn parse_descriptor(text: &str) -> Result<GroupDescriptor, ParseError> {
    let mut parser = Parser { text, pos: 0 };
    let mut terms = vec![parser.term()?];
    while parser.eat("+") {
        terms.push(parser.term()?);
    }
    parser.skip_ws();
    if parser.pos != text.len() {
        return parser.error(parser.pos, "unexpected trailing input");
    }
    Ok(GroupDescriptor::new(terms))
}
