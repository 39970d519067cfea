//! State expressions.
//!
//! ```text
//! expr   := sign? term (('+' | '-') term)*
//! term   := coeff? factor* ('vac' | '|0>')
//! factor := gen '(' '-'? int ')' ('^' int)?
//! gen    := 'h' | 'L'
//! coeff  := int | int '/' int
//! ```
//!
//! Factors act right to left on the vacuum.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use padic_voa::fock::HeisenbergState;
use padic_voa::modes::{h_mode, virasoro_mode};
use padic_voa::scalar::{format_rational, Rational};
use padic_voa::virasoro::{Virasoro, VirasoroState};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("h({index}) at offset {offset} is not a creation operator")]
    NotCreation { offset: usize, index: i64 },
    #[error("generator {generator} at offset {offset} is not available here")]
    WrongGenerator { offset: usize, generator: char },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    H,
    L,
}

impl Generator {
    fn symbol(self) -> char {
        match self {
            Generator::H => 'h',
            Generator::L => 'L',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub generator: Generator,
    pub index: i64,
    pub power: u32,
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: Rational,
    pub factors: Vec<Factor>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateExpr {
    pub terms: Vec<Term>,
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax { offset: self.pos, message: message.into() })
    }

    fn expect(&mut self, c: char) -> Result<(), ExprError> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => self.error(format!("expected '{c}', found '{x}'")),
            None => self.error(format!("expected '{c}', found end of input")),
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(kw) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt, ExprError> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.text[start..].chars().take_while(char::is_ascii_digit).count();
        if digits == 0 {
            return self.error("expected an integer");
        }
        self.pos += digits;
        Ok(self.text[start..self.pos].parse().expect("ascii digits"))
    }

    fn small_integer(&mut self) -> Result<i64, ExprError> {
        let start = self.pos;
        let n = self.integer()?;
        i64::try_from(n).map_err(|_| ExprError::Syntax { offset: start, message: "integer too large".into() })
    }

    fn coeff(&mut self) -> Result<Rational, ExprError> {
        let numer = self.integer()?;
        if self.peek() == Some('/') {
            self.pos += 1;
            let at = self.pos;
            let denom = self.integer()?;
            if denom.is_zero() {
                return Err(ExprError::Syntax { offset: at, message: "zero denominator".into() });
            }
            return Ok(Rational::new(numer, denom));
        }
        Ok(Rational::from_integer(numer))
    }

    fn factor(&mut self, generator: Generator) -> Result<Factor, ExprError> {
        let offset = self.pos;
        self.pos += 1;
        self.expect('(')?;
        let negative = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let magnitude = self.small_integer()?;
        self.expect(')')?;
        let power = if self.peek() == Some('^') {
            self.pos += 1;
            let at = self.pos;
            let p = self.small_integer()?;
            u32::try_from(p).map_err(|_| ExprError::Syntax { offset: at, message: "exponent too large".into() })?
        } else {
            1
        };
        Ok(Factor { generator, index: if negative { -magnitude } else { magnitude }, power, offset })
    }

    fn term(&mut self, sign: Rational) -> Result<Term, ExprError> {
        let coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() => self.coeff()?,
            _ => Rational::one(),
        };
        let mut factors = Vec::new();
        loop {
            match self.peek() {
                Some('h') => factors.push(self.factor(Generator::H)?),
                Some('L') => factors.push(self.factor(Generator::L)?),
                _ => break,
            }
        }
        if !(self.eat_keyword("vac") || self.eat_keyword("|0>")) {
            return match self.peek() {
                Some(x) => self.error(format!("expected a factor or 'vac', found '{x}'")),
                None => self.error("expected a factor or 'vac', found end of input"),
            };
        }
        Ok(Term { coeff: sign * coeff, factors })
    }
}

pub fn parse_state(text: &str) -> Result<StateExpr, ExprError> {
    let mut cur = Cursor { text, pos: 0 };
    let mut terms = Vec::new();
    let mut sign = Rational::one();
    match cur.peek() {
        Some('-') => {
            cur.pos += 1;
            sign = -sign;
        }
        Some('+') => cur.pos += 1,
        _ => {}
    }
    terms.push(cur.term(sign)?);
    while let Some(c) = cur.peek() {
        let sign = match c {
            '+' => Rational::one(),
            '-' => -Rational::one(),
            other => return cur.error(format!("expected '+' or '-', found '{other}'")),
        };
        cur.pos += 1;
        terms.push(cur.term(sign)?);
    }
    Ok(StateExpr { terms })
}

impl StateExpr {
    /// Evaluates in the Fock space: `h(-k)` creates, `L(n)` is the
    /// central-charge-one Virasoro mode.
    pub fn to_heisenberg(&self) -> Result<HeisenbergState, ExprError> {
        let mut out = HeisenbergState::zero();
        for term in &self.terms {
            let mut state = HeisenbergState::vacuum();
            for f in term.factors.iter().rev() {
                if f.generator == Generator::H && f.index >= 0 {
                    return Err(ExprError::NotCreation { offset: f.offset, index: f.index });
                }
                for _ in 0..f.power {
                    state = match f.generator {
                        Generator::H => h_mode(f.index, &state),
                        Generator::L => virasoro_mode(f.index, &state),
                    };
                }
            }
            out.add_scaled(&state, &term.coeff);
        }
        Ok(out)
    }

    /// Evaluates in the Virasoro vertex algebra of `engine`.
    pub fn to_virasoro(&self, engine: &Virasoro) -> Result<VirasoroState, ExprError> {
        let mut out = VirasoroState::zero();
        for term in &self.terms {
            let mut state = VirasoroState::vacuum();
            for f in term.factors.iter().rev() {
                if f.generator != Generator::L {
                    return Err(ExprError::WrongGenerator { offset: f.offset, generator: f.generator.symbol() });
                }
                for _ in 0..f.power {
                    state = engine.l_action(f.index, &state);
                }
            }
            out.add_scaled(&state, &term.coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for StateExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, term) in self.terms.iter().enumerate() {
            let negative = term.coeff < Rational::zero();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = if negative { -term.coeff.clone() } else { term.coeff.clone() };
            if !magnitude.is_one() {
                write!(f, "{} ", format_rational(&magnitude))?;
            }
            for factor in &term.factors {
                write!(f, "{}({})", factor.generator.symbol(), factor.index)?;
                if factor.power != 1 {
                    write!(f, "^{}", factor.power)?;
                }
                f.write_str(" ")?;
            }
            f.write_str("|0>")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use padic_voa::fock::{monomial as heisenberg_monomial, Partition};
    use padic_voa::scalar::rat;

    #[test]
    fn examples() {
        let s = parse_state("h(-1)^2 vac").unwrap().to_heisenberg().unwrap();
        assert_eq!(s, heisenberg_monomial(&[1, 1]));
        assert_eq!(s.weight(), Ok(2));
        let s = parse_state("1/2 h(-3)h(-1) vac - 1/12 vac").unwrap().to_heisenberg().unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.coefficient(&Partition::new(vec![3, 1])), rat(1, 2));
        assert_eq!(
            parse_state("h(-1 vac"),
            Err(ExprError::Syntax { offset: 5, message: "expected ')', found 'v'".into() })
        );
    }

    #[test]
    fn creation_indices_are_enforced() {
        let e = parse_state("h(2) h(-2) vac").unwrap();
        assert_eq!(e.to_heisenberg(), Err(ExprError::NotCreation { offset: 0, index: 2 }));
        let e = parse_state("h(-2) vac").unwrap();
        let vir = Virasoro::new(rat(1, 2));
        assert!(matches!(e.to_virasoro(&vir), Err(ExprError::WrongGenerator { .. })));
    }

    #[test]
    fn virasoro_factors() {
        let vir = Virasoro::new(rat(1, 2));
        let s = parse_state("L(2) L(-2) vac").unwrap().to_virasoro(&vir).unwrap();
        assert_eq!(s, VirasoroState::vacuum().scale(&rat(1, 2)));
        // on the Fock space L(-2)|0> is the conformal vector
        let s = parse_state("L(-2) vac").unwrap().to_heisenberg().unwrap();
        assert_eq!(s, heisenberg_monomial(&[1, 1]).scale(&rat(1, 2)));
    }

    #[test]
    fn signs_and_vacuum_spellings() {
        let a = parse_state("-h(-1) |0> + 3 vac").unwrap().to_heisenberg().unwrap();
        let b = parse_state("3 |0> - h(-1) vac").unwrap().to_heisenberg().unwrap();
        assert_eq!(a, b);
        assert!(parse_state("0 |0>").unwrap().to_heisenberg().unwrap().is_zero());
        assert!(matches!(parse_state("1/0 vac"), Err(ExprError::Syntax { offset: 2, .. })));
        assert!(matches!(parse_state("h(-1)"), Err(ExprError::Syntax { offset: 5, .. })));
        assert!(matches!(parse_state("vac vac"), Err(ExprError::Syntax { offset: 4, .. })));
    }
}
