//! Reader for the s-expression text format written by
//! [`nuchern_core::expr`].

use nuchern_core::expr::sugar_name;
use nuchern_core::{Dims, Error, Form, GaussRat, GrassmannElement, Registry, SuperMatrix};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParseError {
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected `{0}`")]
    Unexpected(String),
    #[error("bad number `{0}`")]
    BadNumber(String),
    #[error("`{op}` expects {expected}")]
    Arity { op: String, expected: &'static str },
    #[error("expression has positive form degree")]
    NotAFunction,
    #[error("matrix rows have different shapes")]
    Ragged,
    #[error(transparent)]
    Algebra(#[from] Error),
}

pub type Result<T> = std::result::Result<T, ParseError>;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Open,
    Close,
    Bar,
    Atom(String),
}

fn tokenize(text: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let mut atom = String::new();
    let flush = |atom: &mut String, out: &mut Vec<Token>| {
        if !atom.is_empty() {
            out.push(Token::Atom(std::mem::take(atom)));
        }
    };
    for ch in text.chars() {
        match ch {
            '(' | ')' | '|' => {
                flush(&mut atom, &mut out);
                out.push(match ch {
                    '(' => Token::Open,
                    ')' => Token::Close,
                    _ => Token::Bar,
                });
            }
            c if c.is_whitespace() => flush(&mut atom, &mut out),
            c => atom.push(c),
        }
    }
    flush(&mut atom, &mut out);
    out
}

/// Parsed tree before symbols are resolved.
#[derive(Clone, Debug)]
enum Sexp {
    Atom(String),
    List(Vec<Sexp>),
    Bar,
}

struct Reader {
    tokens: Vec<Token>,
    pos: usize,
}

impl Reader {
    fn new(text: &str) -> Self {
        Reader { tokens: tokenize(text), pos: 0 }
    }

    fn read(&mut self) -> Result<Sexp> {
        let token = self.tokens.get(self.pos).cloned().ok_or(ParseError::UnexpectedEnd)?;
        self.pos += 1;
        match token {
            Token::Atom(a) => Ok(Sexp::Atom(a)),
            Token::Bar => Ok(Sexp::Bar),
            Token::Close => Err(ParseError::Unexpected(")".into())),
            Token::Open => {
                let mut items = Vec::new();
                loop {
                    match self.tokens.get(self.pos) {
                        None => return Err(ParseError::UnexpectedEnd),
                        Some(Token::Close) => {
                            self.pos += 1;
                            return Ok(Sexp::List(items));
                        }
                        Some(_) => items.push(self.read()?),
                    }
                }
            }
        }
    }

    fn finish(self) -> Result<()> {
        match self.tokens.get(self.pos) {
            None => Ok(()),
            Some(Token::Open) => Err(ParseError::Unexpected("(".into())),
            Some(Token::Close) => Err(ParseError::Unexpected(")".into())),
            Some(Token::Bar) => Err(ParseError::Unexpected("|".into())),
            Some(Token::Atom(a)) => Err(ParseError::Unexpected(a.clone())),
        }
    }
}

fn read_one(text: &str) -> Result<Sexp> {
    let mut reader = Reader::new(text);
    let sexp = reader.read()?;
    reader.finish()?;
    Ok(sexp)
}

fn number(atom: &str) -> Result<GaussRat> {
    GaussRat::parse_real(atom).ok_or_else(|| ParseError::BadNumber(atom.into()))
}

fn is_numeric(atom: &str) -> bool {
    atom.starts_with(|c: char| c.is_ascii_digit() || c == '-') && atom.len() > usize::from(atom.starts_with('-'))
}

fn atom_of(s: &Sexp) -> Result<&str> {
    match s {
        Sexp::Atom(a) => Ok(a),
        Sexp::List(_) => Err(ParseError::Unexpected("(".into())),
        Sexp::Bar => Err(ParseError::Unexpected("|".into())),
    }
}

fn index(s: &Sexp) -> Result<u64> {
    let a = atom_of(s)?;
    a.parse().map_err(|_| ParseError::BadNumber(a.into()))
}

fn lookup(reg: &Registry, name: &str) -> Result<Form> {
    let id = reg.lookup(name).ok_or_else(|| Error::UnknownSymbol(name.into()))?;
    Ok(Form::from_element(GrassmannElement::symbol(reg, id)))
}

fn constant(c: GaussRat) -> Form {
    Form::from_element(GrassmannElement::constant(c))
}

fn arity(op: &str, expected: &'static str) -> ParseError {
    ParseError::Arity { op: op.into(), expected }
}

fn eval(reg: &Registry, s: &Sexp) -> Result<Form> {
    let items = match s {
        Sexp::Bar => return Err(ParseError::Unexpected("|".into())),
        Sexp::Atom(a) if a == "nu0" => return Ok(Form::from_element(GrassmannElement::nu0())),
        Sexp::Atom(a) if is_numeric(a) => return Ok(constant(number(a)?)),
        Sexp::Atom(a) => return lookup(reg, a),
        Sexp::List(items) => items,
    };
    let (head, args) = items.split_first().ok_or(ParseError::Unexpected("()".into()))?;
    let op = atom_of(head)?;
    match op {
        "+" => {
            let mut acc = Form::zero();
            for a in args {
                acc = acc.try_add(&eval(reg, a)?)?;
            }
            Ok(acc)
        }
        "-" => match args {
            [] => Err(arity(op, "at least one operand")),
            [x] => Ok(eval(reg, x)?.negated()),
            [x, rest @ ..] => {
                let mut acc = eval(reg, x)?;
                for a in rest {
                    acc = acc.try_sub(&eval(reg, a)?)?;
                }
                Ok(acc)
            }
        },
        "*" => {
            let mut acc = Form::one();
            for a in args {
                acc = acc.wedge(&eval(reg, a)?)?;
            }
            Ok(acc)
        }
        "/" => match args {
            [x, y] => Ok(eval(reg, x)?.wedge(&eval(reg, y)?.try_invert()?)?),
            _ => Err(arity(op, "two operands")),
        },
        "^" => match args {
            [x, e] => {
                let base = eval(reg, x)?;
                let e = atom_of(e)?;
                let n: i64 = e.parse().map_err(|_| ParseError::BadNumber(e.into()))?;
                let exp = u32::try_from(n.unsigned_abs()).map_err(|_| ParseError::BadNumber(e.into()))?;
                if n < 0 {
                    Ok(base.try_invert()?.pow(exp)?)
                } else {
                    Ok(base.pow(exp)?)
                }
            }
            _ => Err(arity(op, "a base and an integer exponent")),
        },
        "d" => match args {
            [x] => Ok(eval(reg, x)?.d()),
            _ => Err(arity(op, "one operand")),
        },
        "c" => match args {
            [re, im] => {
                let re = number(atom_of(re)?)?;
                let im = number(atom_of(im)?)?;
                Ok(constant(&re + &(&GaussRat::i() * &im)))
            }
            _ => Err(arity(op, "real and imaginary parts")),
        },
        "nu1" => match args {
            [] => lookup(reg, &sugar_name("nu1", 1, None)),
            [chart] => lookup(reg, &sugar_name("nu1", 1, Some(index(chart)? as usize))),
            _ => Err(arity(op, "an optional chart")),
        },
        "z" | "e" | "nue" | "nuz" => {
            let k = |s: &Sexp| -> Result<u32> {
                let a = atom_of(s)?;
                a.parse().map_err(|_| ParseError::BadNumber(a.into()))
            };
            match args {
                [i] => lookup(reg, &sugar_name(op, k(i)?, None)),
                [i, chart] => lookup(reg, &sugar_name(op, k(i)?, Some(index(chart)? as usize))),
                _ => Err(arity(op, "an index and an optional chart")),
            }
        }
        other => Err(ParseError::Unexpected(other.into())),
    }
}

/// Parses a form; symbols must already be registered in `reg`.
pub fn parse_form(reg: &Registry, text: &str) -> Result<Form> {
    eval(reg, &read_one(text)?)
}

/// Parses a degree-zero expression.
pub fn parse_element(reg: &Registry, text: &str) -> Result<GrassmannElement> {
    let f = parse_form(reg, text)?;
    if f.max_degree().unwrap_or(0) > 0 {
        return Err(ParseError::NotAFunction);
    }
    Ok(f.function_part())
}

/// Splits a sequence at its only `|`, if any.
fn split_bar(items: &[Sexp]) -> Result<(&[Sexp], &[Sexp])> {
    let bars: Vec<usize> = items.iter().enumerate().filter(|(_, s)| matches!(s, Sexp::Bar)).map(|(i, _)| i).collect();
    match bars.as_slice() {
        [] => Ok((items, &[])),
        [b] => Ok((&items[..*b], &items[*b + 1..])),
        _ => Err(ParseError::Unexpected("|".into())),
    }
}

/// Parses `(matrix (a b | c) ... | (...))` into a supermatrix of forms.
pub fn parse_matrix(reg: &Registry, text: &str) -> Result<SuperMatrix<Form>> {
    let Sexp::List(items) = read_one(text)? else {
        return Err(ParseError::Unexpected("atom".into()));
    };
    match items.first() {
        Some(Sexp::Atom(a)) if a == "matrix" => {}
        Some(other) => return Err(ParseError::Unexpected(format!("{other:?}"))),
        None => return Err(ParseError::UnexpectedEnd),
    }
    let (even_rows, odd_rows) = split_bar(&items[1..])?;
    let mut cols: Option<Dims> = None;
    let mut entries = Vec::new();
    for row in even_rows.iter().chain(odd_rows) {
        let Sexp::List(cells) = row else {
            return Err(ParseError::Unexpected(format!("{row:?}")));
        };
        let (even, odd) = split_bar(cells)?;
        let shape = Dims::new(even.len(), odd.len());
        if *cols.get_or_insert(shape) != shape {
            return Err(ParseError::Ragged);
        }
        for cell in even.iter().chain(odd) {
            entries.push(eval(reg, cell)?);
        }
    }
    let rows = Dims::new(even_rows.len(), odd_rows.len());
    Ok(SuperMatrix::new(rows, cols.unwrap_or(Dims::new(0, 0)), entries)?)
}

/// Parses a supermatrix whose entries are all functions.
pub fn parse_element_matrix(reg: &Registry, text: &str) -> Result<SuperMatrix<GrassmannElement>> {
    let m = parse_matrix(reg, text)?;
    m.try_map(|f| {
        if f.max_degree().unwrap_or(0) > 0 {
            return Err(Error::BadDimensions("matrix entry has positive form degree".into()));
        }
        Ok(f.function_part())
    })
    .map_err(ParseError::from)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nuchern_core::SymbolKind;

    fn registry() -> Registry {
        let mut reg = Registry::new();
        reg.register_pair("z1", "nuz1", SymbolKind::EvenCoordinate, None).unwrap();
        reg.register_pair("e1", "nue1", SymbolKind::OddCoordinate, None).unwrap();
        reg.register("e2", SymbolKind::OddCoordinate, None).unwrap();
        reg.register("nu1.4", SymbolKind::OddUnit, Some(4)).unwrap();
        reg
    }

    #[test]
    fn reads_the_documented_example() {
        let reg = registry();
        let x = parse_element(&reg, "(+ (* 1/2 (e 1) (e 2)) (* nu0 (z 1)))").unwrap();
        assert_eq!(nuchern_core::expr::write_element(&reg, &x), "(+ (* (z 1) nu0) (* 1/2 (e 1) (e 2)))");
    }

    #[test]
    fn operators() {
        let reg = registry();
        let p = |s| parse_element(&reg, s).unwrap();
        assert_eq!(p("(- (z 1) (z 1))"), GrassmannElement::zero());
        assert_eq!(p("(* (/ 1 (z 1)) (z 1))"), GrassmannElement::one());
        assert_eq!(p("(^ (z 1) -2)"), p("(/ 1 (* (z 1) (z 1)))"));
        assert_eq!(p("(* (c 0 1) (c 0 1))"), GrassmannElement::from_int(-1));
        assert!(p("(* (e 1) (e 1))").is_zero());
        assert!(parse_form(&reg, "(d (nu1 4))").unwrap().max_degree() == Some(1));
        assert_eq!(parse_element(&reg, "(d (z 1))"), Err(ParseError::NotAFunction));
    }

    #[test]
    fn errors() {
        let reg = registry();
        assert_eq!(parse_form(&reg, "(+ 1"), Err(ParseError::UnexpectedEnd));
        assert_eq!(parse_form(&reg, "1 2"), Err(ParseError::Unexpected("2".into())));
        assert_eq!(parse_form(&reg, "(z 9)"), Err(ParseError::Algebra(Error::UnknownSymbol("z9".into()))));
        assert_eq!(parse_form(&reg, "1/0"), Err(ParseError::BadNumber("1/0".into())));
        assert!(matches!(parse_form(&reg, "(^ (z 1))"), Err(ParseError::Arity { .. })));
        assert_eq!(parse_matrix(&reg, "(matrix (1 2) (3))"), Err(ParseError::Ragged));
    }

    #[test]
    fn matrix_layout() {
        let reg = registry();
        let m = parse_element_matrix(&reg, "(matrix (1 (z 1) | (e 1)) (0 1 | 0) | ((e 2) 0 | 1))").unwrap();
        assert_eq!(m.rows(), Dims::new(2, 1));
        assert_eq!(m.cols(), Dims::new(2, 1));
        assert_eq!(m.parity(), Some(0));
        let text = nuchern_core::expr::write_matrix(&m, |g| nuchern_core::expr::write_element(&reg, g));
        assert_eq!(text, "(matrix (1 (z 1) | (e 1)) (0 1 | 0) | ((e 2) 0 | 1))");
    }
}
