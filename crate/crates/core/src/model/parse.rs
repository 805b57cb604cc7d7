//! The one-line function spec language.
//!
//! ```text
//! poly:[a_k,...,a_0] on (lo,hi)      affine:m,b on (lo,hi)
//! abs-shift:c on (lo,hi)             sin on (lo,hi)
//! sininv on (lo,hi)                  cantor on (0,1)
//! sawtooth:period on (lo,hi)         weier:N on (lo,hi)
//! grid:[k...]->[v...] linear|none    expr:<term> on (lo,hi)
//! ```
//!
//! Terms for `expr:` are built from `x`, numbers, `add(a,b)`, `sub(a,b)`,
//! `min(a,b)`, `max(a,b)`, `abs(a)`, `sin(a)`, `exp(a)`, `recip(a)`,
//! `cantor(a)`, `scale[c](a)`, `poly[c..](a)`, `saw[p](a)`, `weier[N](a)`
//! and `pwa[k..;v..](a)`. Brackets may be `(` or `[` on either end of an
//! interval; `[` marks a closed endpoint.

use super::{fmt_num, Body, Expr, FunctionModel, GridForm, Interpolation};
use crate::error::{Error, Result};
use crate::interval::{Interval, Openness};

pub fn parse_function_spec(text: &str) -> Result<FunctionModel> {
    let mut c = Cursor { s: text, pos: 0 };
    c.ws();
    let kw_pos = c.pos;
    let kw = c.word();
    let expr = match kw {
        "grid" => return parse_grid(&mut c),
        "poly" => {
            c.expect(":")?;
            let at = c.pos;
            let cs = c.num_list(']')?;
            if cs.is_empty() {
                return Err(Error::parse(at, "polynomial needs at least one coefficient"));
            }
            Expr::poly(cs)
        }
        "affine" => {
            c.expect(":")?;
            let m = c.number()?;
            c.expect(",")?;
            let b = c.number()?;
            Expr::affine(m, b)
        }
        "abs-shift" => {
            c.expect(":")?;
            let shift = c.number()?;
            Expr::Abs(Box::new(Expr::affine(1.0, -shift)))
        }
        "sin" => Expr::Sin(Box::new(Expr::X)),
        "sininv" => Expr::Sin(Box::new(Expr::Recip(Box::new(Expr::X)))),
        "cantor" => Expr::Cantor(Box::new(Expr::X)),
        "sawtooth" => {
            c.expect(":")?;
            let at = c.pos;
            let p = c.number()?;
            if p <= 0.0 {
                return Err(Error::parse(at, "sawtooth period must be positive"));
            }
            Expr::Sawtooth(p, Box::new(Expr::X))
        }
        "weier" => {
            c.expect(":")?;
            Expr::Weier(c.uint()?, Box::new(Expr::X))
        }
        "expr" => {
            c.expect(":")?;
            c.term()?
        }
        "" => return Err(Error::parse(kw_pos, "expected a function kind")),
        other => return Err(Error::parse(kw_pos, format!("unknown function kind `{other}`"))),
    };
    c.ws();
    c.expect_word("on")?;
    let dom_pos = c.pos;
    let domain = c.interval()?;
    c.end()?;
    if kw == "sininv" && (domain.lo < 0.0 && domain.hi > 0.0 || domain.contains(0.0)) {
        return Err(Error::parse(dom_pos, "sininv needs a domain avoiding 0"));
    }
    FunctionModel::from_expr(expr, domain).map_err(|e| Error::parse(dom_pos, e.to_string()))
}

fn parse_grid(c: &mut Cursor<'_>) -> Result<FunctionModel> {
    c.expect(":")?;
    let at = c.pos;
    let knots = c.num_list(']')?;
    c.expect("->")?;
    let values = c.num_list(']')?;
    c.ws();
    let interp_pos = c.pos;
    let interpolation = match c.word() {
        "linear" => Interpolation::Linear,
        "none" => Interpolation::None,
        _ => return Err(Error::parse(interp_pos, "expected `linear` or `none`")),
    };
    let grid = GridForm::new(knots, values, interpolation).map_err(|e| Error::parse(at, e.to_string()))?;
    let model = FunctionModel::from_grid(grid);
    c.ws();
    if c.at_end() {
        return Ok(model);
    }
    c.expect_word("on")?;
    let dom_pos = c.pos;
    let domain = c.interval()?;
    c.end()?;
    model.restrict(domain).map_err(|e| Error::parse(dom_pos, e.to_string()))
}

/// Parses an interval such as `(0,1)`, `[0,1]` or `[0,1)`.
pub fn parse_interval(text: &str) -> Result<Interval> {
    let mut c = Cursor { s: text, pos: 0 };
    c.ws();
    let i = c.interval()?;
    c.end()?;
    Ok(i)
}

struct Cursor<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn rest(&self) -> &'a str {
        &self.s[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.s.len()
    }

    fn ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += self.peek().map_or(0, char::len_utf8);
        }
    }

    fn end(&mut self) -> Result<()> {
        self.ws();
        if self.at_end() {
            Ok(())
        } else {
            Err(Error::parse(self.pos, "unexpected trailing input"))
        }
    }

    fn eat(&mut self, lit: &str) -> bool {
        self.ws();
        if self.rest().starts_with(lit) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.eat(lit) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected `{lit}`")))
        }
    }

    fn word(&mut self) -> &'a str {
        self.ws();
        let start = self.pos;
        let len = self
            .rest()
            .find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '-'))
            .unwrap_or(self.rest().len());
        self.pos += len;
        &self.s[start..self.pos]
    }

    fn expect_word(&mut self, w: &str) -> Result<()> {
        let at = self.pos;
        if self.word() == w {
            Ok(())
        } else {
            self.pos = at;
            Err(Error::parse(at, format!("expected `{w}`")))
        }
    }

    fn number(&mut self) -> Result<f64> {
        self.ws();
        let start = self.pos;
        let b = self.s.as_bytes();
        let mut i = self.pos;
        if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
            i += 1;
        }
        while i < b.len() && (b[i].is_ascii_digit() || b[i] == b'.') {
            i += 1;
        }
        if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
            let mut j = i + 1;
            if j < b.len() && (b[j] == b'+' || b[j] == b'-') {
                j += 1;
            }
            if j < b.len() && b[j].is_ascii_digit() {
                while j < b.len() && b[j].is_ascii_digit() {
                    j += 1;
                }
                i = j;
            }
        }
        let text = &self.s[start..i];
        match text.parse::<f64>() {
            Ok(v) if v.is_finite() => {
                self.pos = i;
                Ok(v)
            }
            _ => Err(Error::parse(start, "expected a finite number")),
        }
    }

    fn uint(&mut self) -> Result<u32> {
        self.ws();
        let start = self.pos;
        let len = self.rest().find(|ch: char| !ch.is_ascii_digit()).unwrap_or(self.rest().len());
        let v = self.s[start..start + len]
            .parse::<u32>()
            .map_err(|_| Error::parse(start, "expected a non-negative integer"))?;
        self.pos += len;
        Ok(v)
    }

    /// `[a,b,...]` or, with `close = ';'`, the first half of `[k..;v..]`.
    fn num_list(&mut self, close: char) -> Result<Vec<f64>> {
        self.expect("[")?;
        self.num_seq(close)
    }

    fn num_seq(&mut self, close: char) -> Result<Vec<f64>> {
        let mut out = Vec::new();
        let close_s = close.to_string();
        if self.eat(&close_s) {
            return Ok(out);
        }
        loop {
            out.push(self.number()?);
            if self.eat(&close_s) {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    fn interval(&mut self) -> Result<Interval> {
        self.ws();
        let start = self.pos;
        let lo_closed = match self.peek() {
            Some('(') => false,
            Some('[') => true,
            _ => return Err(Error::parse(start, "expected `(` or `[`")),
        };
        self.pos += 1;
        let lo = self.number()?;
        self.expect(",")?;
        let hi = self.number()?;
        self.ws();
        let hi_closed = match self.peek() {
            Some(')') => false,
            Some(']') => true,
            _ => return Err(Error::parse(self.pos, "expected `)` or `]`")),
        };
        self.pos += 1;
        let openness = match (lo_closed, hi_closed) {
            (true, true) => Openness::Closed,
            (false, false) => Openness::Open,
            (false, true) => Openness::HalfOpenLeft,
            (true, false) => Openness::HalfOpenRight,
        };
        Interval::new(lo, hi, openness).map_err(|_| Error::parse(start, "interval needs finite lo < hi"))
    }

    fn term(&mut self) -> Result<Expr> {
        self.ws();
        match self.peek() {
            Some(ch) if ch.is_ascii_digit() || matches!(ch, '-' | '+' | '.') => {
                return Ok(Expr::Const(self.number()?));
            }
            _ => {}
        }
        let at = self.pos;
        let name = self.word();
        let unary = |c: &mut Self| -> Result<Box<Expr>> {
            c.expect("(")?;
            let a = c.term()?;
            c.expect(")")?;
            Ok(Box::new(a))
        };
        let binary = |c: &mut Self| -> Result<(Box<Expr>, Box<Expr>)> {
            c.expect("(")?;
            let a = c.term()?;
            c.expect(",")?;
            let b = c.term()?;
            c.expect(")")?;
            Ok((Box::new(a), Box::new(b)))
        };
        Ok(match name {
            "x" => Expr::X,
            "add" => {
                let (a, b) = binary(self)?;
                Expr::Add(a, b)
            }
            "sub" => {
                let (a, b) = binary(self)?;
                Expr::Sub(a, b)
            }
            "min" => {
                let (a, b) = binary(self)?;
                Expr::Min(a, b)
            }
            "max" => {
                let (a, b) = binary(self)?;
                Expr::Max(a, b)
            }
            "abs" => Expr::Abs(unary(self)?),
            "sin" => Expr::Sin(unary(self)?),
            "exp" => Expr::Exp(unary(self)?),
            "recip" => Expr::Recip(unary(self)?),
            "cantor" => Expr::Cantor(unary(self)?),
            "scale" => {
                self.expect("[")?;
                let c = self.number()?;
                self.expect("]")?;
                Expr::Scale(c, unary(self)?)
            }
            "poly" => {
                let p = self.pos;
                let cs = self.num_list(']')?;
                if cs.is_empty() {
                    return Err(Error::parse(p, "polynomial needs at least one coefficient"));
                }
                Expr::Poly(cs, unary(self)?)
            }
            "saw" => {
                self.expect("[")?;
                let p = self.number()?;
                self.expect("]")?;
                if p <= 0.0 {
                    return Err(Error::parse(at, "sawtooth period must be positive"));
                }
                Expr::Sawtooth(p, unary(self)?)
            }
            "weier" => {
                self.expect("[")?;
                let n = self.uint()?;
                self.expect("]")?;
                Expr::Weier(n, unary(self)?)
            }
            "pwa" => {
                let p = self.pos;
                let knots = self.num_list(';')?;
                let values = self.num_seq(']')?;
                let g = GridForm::new(knots, values, Interpolation::Linear)
                    .map_err(|e| Error::parse(p, e.to_string()))?;
                Expr::PiecewiseAffine {
                    knots: g.knots,
                    values: g.values,
                    arg: unary(self)?,
                }
            }
            "" => return Err(Error::parse(at, "expected a term")),
            other => return Err(Error::parse(at, format!("unknown term `{other}`"))),
        })
    }
}

pub(super) fn print(m: &FunctionModel) -> String {
    match &m.body {
        Body::Grid(g) => {
            let interp = match g.interpolation {
                Interpolation::Linear => "linear",
                Interpolation::None => "none",
            };
            let mut s = format!("grid:{}->{} {interp}", list(&g.knots), list(&g.values));
            let hull = Interval::closed(g.lo(), g.hi()).expect("valid grid");
            if m.domain != hull {
                s.push_str(" on ");
                s.push_str(&m.domain.to_text());
            }
            s
        }
        Body::Expr(e) => format!("{} on {}", kind(e), m.domain.to_text()),
    }
}

fn kind(e: &Expr) -> String {
    use Expr::*;
    match e {
        Poly(cs, a) if **a == X && cs.len() == 2 => format!("affine:{},{}", fmt_num(cs[0]), fmt_num(cs[1])),
        Poly(cs, a) if **a == X => format!("poly:{}", list(cs)),
        Abs(a) => match &**a {
            Poly(cs, inner) if **inner == X && cs.len() == 2 && cs[0] == 1.0 => {
                format!("abs-shift:{}", fmt_num(-cs[1]))
            }
            _ => format!("expr:{}", term(e)),
        },
        Sin(a) if **a == X => "sin".into(),
        Sin(a) if **a == Recip(Box::new(X)) => "sininv".into(),
        Cantor(a) if **a == X => "cantor".into(),
        Sawtooth(p, a) if **a == X => format!("sawtooth:{}", fmt_num(*p)),
        Weier(n, a) if **a == X => format!("weier:{n}"),
        _ => format!("expr:{}", term(e)),
    }
}

fn list(v: &[f64]) -> String {
    let items: Vec<String> = v.iter().map(|&x| fmt_num(x)).collect();
    format!("[{}]", items.join(","))
}

fn term(e: &Expr) -> String {
    use Expr::*;
    match e {
        X => "x".into(),
        Const(c) => fmt_num(*c),
        Add(a, b) => format!("add({},{})", term(a), term(b)),
        Sub(a, b) => format!("sub({},{})", term(a), term(b)),
        Min(a, b) => format!("min({},{})", term(a), term(b)),
        Max(a, b) => format!("max({},{})", term(a), term(b)),
        Scale(c, a) => format!("scale[{}]({})", fmt_num(*c), term(a)),
        Poly(cs, a) => format!("poly{}({})", list(cs), term(a)),
        Abs(a) => format!("abs({})", term(a)),
        Sin(a) => format!("sin({})", term(a)),
        Exp(a) => format!("exp({})", term(a)),
        Recip(a) => format!("recip({})", term(a)),
        Cantor(a) => format!("cantor({})", term(a)),
        Sawtooth(p, a) => format!("saw[{}]({})", fmt_num(*p), term(a)),
        Weier(n, a) => format!("weier[{n}]({})", term(a)),
        PiecewiseAffine { knots, values, arg } => {
            let k: Vec<String> = knots.iter().map(|&x| fmt_num(x)).collect();
            let v: Vec<String> = values.iter().map(|&x| fmt_num(x)).collect();
            format!("pwa[{};{}]({})", k.join(","), v.join(","), term(arg))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_catalog_forms() {
        let f = parse_function_spec("poly:[1,0,0] on (0,1)").unwrap();
        assert_eq!(f.eval(0.5).unwrap(), 0.25);
        let g = parse_function_spec("affine:3,1 on (0,2)").unwrap();
        assert_eq!(g.eval(1.0).unwrap(), 4.0);
        let h = parse_function_spec("grid:[0,0.5,1]->[0,1,0] linear").unwrap();
        assert_eq!(h.eval(0.25).unwrap(), 0.5);
        assert!(h.domain().lo_closed());
        let s = parse_function_spec("abs-shift:0.5 on (0,1)").unwrap();
        assert_eq!(s.eval(0.25).unwrap(), 0.25);
        assert!(parse_function_spec("sininv on (0.001,1)").is_ok());
        assert!(parse_function_spec("weier:12 on (0,1)").is_ok());
        assert!(parse_function_spec("sawtooth:0.25 on [0,1]").is_ok());
    }

    #[test]
    fn canonical_forms_round_trip() {
        for text in [
            "poly:[1,0,0] on (0,1)",
            "affine:3,1 on (0,2)",
            "abs-shift:0.5 on (0,1)",
            "sin on (0.1,3)",
            "sininv on (0.001,1)",
            "cantor on (0,1)",
            "sawtooth:0.25 on (0,1)",
            "weier:12 on (0,1)",
            "grid:[0,0.5,1]->[0,1,0] linear",
            "grid:[0,1]->[0,2] none",
            "expr:add(scale[2](x),cantor(poly[1,-0.5](x))) on [0,1)",
            "expr:pwa[0,1,2;0,1e-7,0](x) on (0,2]",
        ] {
            let f = parse_function_spec(text).unwrap();
            assert_eq!(f.to_spec(), text);
            assert_eq!(parse_function_spec(&f.to_spec()).unwrap(), f);
        }
    }

    #[test]
    fn interval_text() {
        let i = parse_interval(" [0, 0.5) ").unwrap();
        assert_eq!((i.lo, i.hi), (0.0, 0.5));
        assert!(i.contains(0.0) && !i.contains(0.5));
        assert!(parse_interval("(1,0)").is_err());
        assert!(parse_interval("(0,1) x").is_err());
    }

    #[test]
    fn errors_carry_positions() {
        match parse_function_spec("poly:[1,0,0] in (0,1)") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 13),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_function_spec("bogus on (0,1)"), Err(Error::Parse { position: 0, .. })));
        assert!(parse_function_spec("poly:[1,0 on (0,1)").is_err());
        assert!(parse_function_spec("sin on (1,0)").is_err());
        assert!(parse_function_spec("sininv on (-1,1)").is_err());
        assert!(parse_function_spec("grid:[0,0]->[1,1] linear").is_err());
        assert!(parse_function_spec("affine:3,1 on (0,2) extra").is_err());
    }
}
