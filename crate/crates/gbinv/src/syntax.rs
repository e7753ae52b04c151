//! The system file format.
//!
//! ```text
//! # comment
//! field 10007
//! vars w x y z
//! order drl:x>y>w>z
//! poly x^2 - x
//! poly x*y - 1
//! field-equations
//! hvar x0
//! ```
//!
//! Polynomials follow
//! `term ::= coeff | coeff '*' mono | mono`,
//! `mono ::= var ('^' int)? ('*' var ('^' int)?)*`,
//! `polynomial ::= term (('+'|'-') term)*`, with an optional leading sign.

use std::fmt::Write as _;

use gbinv_core::{Monomial, OrderKind, PolySystem, Polynomial, PrimeField, TermOrder};

use crate::error::{CliError, Result};

/// A parsed system file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemFile {
    /// The generators as written, without field equations.
    pub base: PolySystem,
    pub order: Option<TermOrder>,
    /// The order token as written, for messages and formatting.
    pub order_token: Option<String>,
    pub field_equations: bool,
    pub hvar: Option<String>,
}

impl SystemFile {
    /// The system to analyze: the generators plus field equations if requested.
    pub fn system(&self) -> PolySystem {
        if self.field_equations {
            self.base.with_field_equations()
        } else {
            self.base.clone()
        }
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
    col0: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, message: impl Into<String>) -> CliError {
        CliError::syntax(self.line, self.col0 + self.pos + 1, message)
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.text[start..self.pos])
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => self.pos += 1,
            _ => return None,
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        Some(&self.text[start..self.pos])
    }
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses a polynomial over the named variables. `line` and `col0` locate
/// the text for error messages.
pub fn parse_polynomial(
    text: &str,
    vars: &[String],
    field: PrimeField,
    line: usize,
    col0: usize,
) -> Result<Polynomial> {
    let n = vars.len();
    let mut cur = Cursor { text, pos: 0, line, col0 };
    let mut poly = Polynomial::zero(n, field);
    let mut negative = false;
    cur.skip_ws();
    if cur.eat('-') {
        negative = true;
    } else {
        cur.eat('+');
    }
    loop {
        cur.skip_ws();
        let term_start = cur.pos;
        let mut coeff = field.element(1).value();
        let mut exps = vec![0u16; n];
        let mut saw_var = false;
        if let Some(digits) = cur.integer() {
            coeff = field
                .parse_element(digits)
                .map_err(|_| CliError::syntax(line, col0 + term_start + 1, format!("bad coefficient {}", digits)))?
                .value();
            if !cur.eat('*') {
                cur.skip_ws();
                if matches!(cur.peek(), Some(c) if c.is_ascii_alphabetic() || c == '_') {
                    return Err(cur.err("expected '*' between coefficient and variable"));
                }
                push_term(&mut poly, field, coeff, negative, &exps);
                if !next_sign(&mut cur, &mut negative)? {
                    break;
                }
                continue;
            }
        }
        loop {
            cur.skip_ws();
            let at = cur.pos;
            let Some(name) = cur.ident() else {
                return Err(if saw_var || cur.pos != term_start || cur.peek().is_some() {
                    cur.err("expected a variable")
                } else {
                    cur.err("expected a term")
                });
            };
            let Some(i) = vars.iter().position(|v| v == name) else {
                return Err(CliError::syntax(line, col0 + at + 1, format!("unknown variable '{}'", name)));
            };
            saw_var = true;
            let mut e: u32 = 1;
            if cur.eat('^') {
                let at = cur.pos;
                let digits = cur.integer().ok_or_else(|| cur.err("expected an exponent"))?;
                e = digits
                    .parse::<u32>()
                    .ok()
                    .filter(|&e| e <= u16::MAX as u32)
                    .ok_or_else(|| CliError::syntax(line, col0 + at + 1, "exponent out of range"))?;
            }
            let total = exps[i] as u32 + e;
            if total > u16::MAX as u32 {
                return Err(cur.err("exponent out of range"));
            }
            exps[i] = total as u16;
            if !cur.eat('*') {
                break;
            }
        }
        push_term(&mut poly, field, coeff, negative, &exps);
        if !next_sign(&mut cur, &mut negative)? {
            break;
        }
    }
    cur.skip_ws();
    if cur.peek().is_some() {
        return Err(cur.err("unexpected character"));
    }
    Ok(poly)
}

fn push_term(poly: &mut Polynomial, field: PrimeField, coeff: u32, negative: bool, exps: &[u16]) {
    let c = if negative { field.neg(coeff) } else { coeff };
    poly.add_term(Monomial::new(exps.to_vec()), c);
}

fn next_sign(cur: &mut Cursor<'_>, negative: &mut bool) -> Result<bool> {
    cur.skip_ws();
    match cur.peek() {
        None => Ok(false),
        Some('+') => {
            cur.pos += 1;
            *negative = false;
            Ok(true)
        }
        Some('-') => {
            cur.pos += 1;
            *negative = true;
            Ok(true)
        }
        Some(_) => Err(cur.err("expected '+' or '-'")),
    }
}

/// Parses `drl`, `grlex` or `lex`, optionally followed by `:a>b>c` ranking
/// the variables from greatest to least. A homogenizing variable named in
/// the ranking is dropped, which leaves the induced order on the
/// original ring.
pub fn parse_order(token: &str, vars: &[String], hvar: Option<&str>) -> std::result::Result<TermOrder, String> {
    let (kind, perm) = match token.split_once(':') {
        Some((k, p)) => (k, Some(p)),
        None => (token, None),
    };
    let kind = match kind.trim() {
        "drl" | "degrevlex" => OrderKind::Degrevlex,
        "grlex" => OrderKind::Grlex,
        "lex" => OrderKind::Lex,
        other => return Err(format!("unknown order '{}' (expected drl, grlex or lex)", other)),
    };
    let Some(perm) = perm else {
        return Ok(TermOrder::standard(kind, vars.len()));
    };
    let mut idx = Vec::with_capacity(vars.len());
    for name in perm.split('>').map(str::trim) {
        if Some(name) == hvar {
            continue;
        }
        match vars.iter().position(|v| v == name) {
            Some(i) if !idx.contains(&i) => idx.push(i),
            Some(_) => return Err(format!("variable '{}' ranked twice", name)),
            None => return Err(format!("unknown variable '{}' in order", name)),
        }
    }
    if idx.len() != vars.len() {
        return Err(format!("order ranks {} of {} variables", idx.len(), vars.len()));
    }
    TermOrder::new(kind, idx).map_err(|e| e.to_string())
}

/// Parses a system file.
pub fn parse_system(text: &str) -> Result<SystemFile> {
    let mut field: Option<PrimeField> = None;
    let mut vars: Option<Vec<String>> = None;
    let mut order_line: Option<(usize, usize, String)> = None;
    let mut polys: Vec<Polynomial> = Vec::new();
    let mut field_equations = false;
    let mut hvar: Option<String> = None;

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let indent = content.len() - trimmed.len();
        let (key, rest) = match trimmed.find(char::is_whitespace) {
            Some(i) => (&trimmed[..i], &trimmed[i..]),
            None => (trimmed.trim_end(), ""),
        };
        let rest_col = indent + key.len();
        let arg = rest.trim();
        let arg_col = rest_col + (rest.len() - rest.trim_start().len()) + 1;
        match key {
            "field" => {
                if field.is_some() {
                    return Err(CliError::syntax(line, indent + 1, "duplicate field line"));
                }
                let p: u64 = arg
                    .parse()
                    .map_err(|_| CliError::syntax(line, arg_col, format!("expected a prime, found '{}'", arg)))?;
                field = Some(
                    PrimeField::new(p).map_err(|e| CliError::syntax(line, arg_col, e.to_string()))?,
                );
            }
            "vars" => {
                if vars.is_some() {
                    return Err(CliError::syntax(line, indent + 1, "duplicate vars line"));
                }
                let mut names: Vec<String> = Vec::new();
                for name in arg.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()) {
                    let col = arg_col + name.as_ptr() as usize - arg.as_ptr() as usize;
                    if !is_ident(name) {
                        return Err(CliError::syntax(line, col, format!("invalid variable name '{}'", name)));
                    }
                    if names.iter().any(|v| v == name) {
                        return Err(CliError::syntax(line, col, format!("duplicate variable '{}'", name)));
                    }
                    names.push(name.to_string());
                }
                if names.is_empty() {
                    return Err(CliError::syntax(line, arg_col, "no variables declared"));
                }
                vars = Some(names);
            }
            "order" => {
                if arg.is_empty() {
                    return Err(CliError::syntax(line, arg_col, "missing order token"));
                }
                order_line = Some((line, arg_col, arg.to_string()));
            }
            "hvar" => {
                if !is_ident(arg) {
                    return Err(CliError::syntax(line, arg_col, format!("invalid variable name '{}'", arg)));
                }
                hvar = Some(arg.to_string());
            }
            "field-equations" => {
                if !arg.is_empty() {
                    return Err(CliError::syntax(line, arg_col, "field-equations takes no argument"));
                }
                field_equations = true;
            }
            "poly" => {
                let (Some(f), Some(v)) = (field, vars.as_ref()) else {
                    return Err(CliError::syntax(line, indent + 1, "poly before field and vars lines"));
                };
                let body_col = arg_col - 1;
                let p = parse_polynomial(arg, v, f, line, body_col)?;
                if p.is_zero() {
                    return Err(CliError::syntax(line, arg_col, "zero generator"));
                }
                polys.push(p);
            }
            other => {
                return Err(CliError::syntax(line, indent + 1, format!("unknown directive '{}'", other)));
            }
        }
    }
    let field = field.ok_or_else(|| CliError::syntax(1, 1, "missing field line"))?;
    let vars = vars.ok_or_else(|| CliError::syntax(1, 1, "missing vars line"))?;
    if let Some(h) = &hvar {
        if vars.contains(h) {
            return Err(CliError::Usage(format!("homogenizing variable '{}' is already a variable", h)));
        }
    }
    let (order, order_token) = match order_line {
        Some((line, col, tok)) => {
            let o = parse_order(&tok, &vars, hvar.as_deref()).map_err(|m| CliError::syntax(line, col, m))?;
            (Some(o), Some(tok))
        }
        None => (None, None),
    };
    if polys.is_empty() {
        return Err(CliError::syntax(text.lines().count().max(1), 1, "no poly lines"));
    }
    let base = PolySystem::new(field, vars, polys)?;
    Ok(SystemFile {
        base,
        order,
        order_token,
        field_equations,
        hvar,
    })
}

/// Writes a system file that parses back to an equal [`SystemFile`].
pub fn format_system(file: &SystemFile) -> String {
    let s = &file.base;
    let mut out = String::new();
    let _ = writeln!(out, "field {}", s.field().modulus());
    let _ = writeln!(out, "vars {}", s.var_names().join(" "));
    if let Some(h) = &file.hvar {
        let _ = writeln!(out, "hvar {}", h);
    }
    if let Some(o) = &file.order {
        let _ = writeln!(out, "order {}", o.display_with(s.var_names()));
    }
    for g in s.generators() {
        let _ = writeln!(out, "poly {}", g.display_with(s.var_names()));
    }
    if file.field_equations {
        let _ = writeln!(out, "field-equations");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const INTERVALS: &str = "field 10007\nvars w x y z\npoly x^2 - x\npoly x*y - 1\npoly w^6 - w\npoly w^5*z^5 - 1\n";

    #[test]
    fn parses_intervals_system() {
        let f = parse_system(INTERVALS).unwrap();
        let s = f.system();
        assert_eq!(s.nvars(), 4);
        assert_eq!(s.generators().len(), 4);
        assert_eq!(s.degrees(), vec![2, 2, 6, 10]);
        assert_eq!(format!("{}", s.generators()[3].display_with(s.var_names())), "w^5*z^5 - 1");
    }

    #[test]
    fn rejects_zero_generator() {
        let e = parse_system("field 5\nvars x\npoly 0\n").unwrap_err();
        assert!(matches!(e, CliError::Syntax { line: 3, .. }), "{}", e);
        let e = parse_system("field 5\nvars x\npoly x - x\n").unwrap_err();
        assert!(e.to_string().contains("zero generator"));
    }

    #[test]
    fn reports_positions() {
        let e = parse_system("field 5\nvars x y\npoly x + z\n").unwrap_err();
        match e {
            CliError::Syntax { line, column, message } => {
                assert_eq!((line, column), (3, 10));
                assert!(message.contains("unknown variable 'z'"));
            }
            other => panic!("{}", other),
        }
        let e = parse_system("field 6\nvars x\npoly x\n").unwrap_err();
        assert!(matches!(e, CliError::Syntax { line: 1, column: 7, .. }), "{}", e);
        let e = parse_system("field 5\nvars x x\npoly x\n").unwrap_err();
        assert!(matches!(e, CliError::Syntax { line: 2, column: 8, .. }), "{}", e);
        let e = parse_system("field 5\nvars x\npoly 3x\n").unwrap_err();
        assert!(matches!(e, CliError::Syntax { line: 3, .. }), "{}", e);
    }

    #[test]
    fn grammar_forms() {
        let vars: Vec<String> = ["x", "y"].iter().map(|s| s.to_string()).collect();
        let f = PrimeField::new(7).unwrap();
        let p = parse_polynomial("-3*x^2*y + x*x - 2 + y^0", &vars, f, 1, 0).unwrap();
        let q = parse_polynomial("x^2 + 4*x^2*y - 1", &vars, f, 1, 0).unwrap();
        assert_eq!(p, q);
        assert!(parse_polynomial("x +", &vars, f, 1, 0).is_err());
        assert!(parse_polynomial("x y", &vars, f, 1, 0).is_err());
        assert!(parse_polynomial("x^", &vars, f, 1, 0).is_err());
    }

    #[test]
    fn order_tokens() {
        let vars: Vec<String> = ["x1", "x2", "x3"].iter().map(|s| s.to_string()).collect();
        let o = parse_order("drl:x3>x1>x0>x2", &vars, Some("x0")).unwrap();
        assert_eq!(o.permutation(), &[2, 0, 1]);
        assert_eq!(o.kind(), OrderKind::Degrevlex);
        assert!(parse_order("lex", &vars, None).unwrap().permutation() == [0, 1, 2]);
        assert!(parse_order("drl:x3>x1", &vars, None).is_err());
        assert!(parse_order("revlex", &vars, None).is_err());
    }

    #[test]
    fn round_trip() {
        let text = "# example\nfield 5\nvars x1 x2 x3\nhvar x0\norder drl:x3>x1>x2\npoly x1*x2 + x2\npoly x2^2 - 1\npoly x3^4 - 1\nfield-equations\n";
        let f = parse_system(text).unwrap();
        let again = parse_system(&format_system(&f)).unwrap();
        assert_eq!(f.base, again.base);
        assert_eq!(f.order, again.order);
        assert_eq!(f.field_equations, again.field_equations);
        assert_eq!(f.hvar, again.hvar);
        assert_eq!(f.system().generators().len(), 6);
    }
}
