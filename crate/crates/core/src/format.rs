//! Text and JSON rendering of expansions, and parsing them back.
//!
//! Text: `F[4123] - F[4132] + 2*M[21]`, `M*[312]`, `M(2,1,1)`, `F[1] ⊗ F[2431]`.
//! JSON: `{"algebra":"ssym","basis":"M","dual":false,"terms":[{"index":[4,1,2,3],"coeff":1}]}`;
//! quasi-symmetric indices carry `"ambient"`, tensors carry `"tensor":true` and lists of indices.
//! JSON round-trips every value; text cannot mark tensors with fewer than two factors.

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::linear::{Coeff, LinComb};
use crate::perm::Permutation;
use crate::qsym::{QSymExpansion, QSymTensor};
use crate::ssym::{Basis, PermExpansion, TensorExpansion};
use crate::subset::{Composition, Subset};

/// Any element or tensor the library produces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expansion {
    Perm(PermExpansion),
    PermTensor(TensorExpansion),
    QSym(QSymExpansion),
    QSymTensor(QSymTensor),
}

impl From<PermExpansion> for Expansion {
    fn from(x: PermExpansion) -> Self {
        Expansion::Perm(x)
    }
}

impl From<TensorExpansion> for Expansion {
    fn from(x: TensorExpansion) -> Self {
        Expansion::PermTensor(x)
    }
}

impl From<QSymExpansion> for Expansion {
    fn from(x: QSymExpansion) -> Self {
        Expansion::QSym(x)
    }
}

impl From<QSymTensor> for Expansion {
    fn from(x: QSymTensor) -> Self {
        Expansion::QSymTensor(x)
    }
}

/// Which algebra an expansion lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algebra {
    Ssym,
    Qsym,
}

impl std::fmt::Display for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Algebra::Ssym => "ssym",
            Algebra::Qsym => "qsym",
        })
    }
}

impl std::str::FromStr for Algebra {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ssym" | "perm" | "sym" => Ok(Algebra::Ssym),
            "qsym" => Ok(Algebra::Qsym),
            _ => Err(Error::Parse(format!("unknown algebra {s:?}"))),
        }
    }
}

impl Expansion {
    pub fn algebra(&self) -> Algebra {
        match self {
            Expansion::Perm(_) | Expansion::PermTensor(_) => Algebra::Ssym,
            Expansion::QSym(_) | Expansion::QSymTensor(_) => Algebra::Qsym,
        }
    }

    fn header(&self) -> (Basis, bool, bool) {
        match self {
            Expansion::Perm(x) => (x.basis, x.dual, false),
            Expansion::PermTensor(x) => (x.basis, x.dual, true),
            Expansion::QSym(x) => (x.basis, x.dual, false),
            Expansion::QSymTensor(x) => (x.basis, x.dual, true),
        }
    }

    /// Terms in canonical order as (factors, coefficient).
    fn factor_terms(&self) -> Vec<(Vec<Index>, Coeff)> {
        match self {
            Expansion::Perm(x) => x
                .terms
                .iter()
                .map(|(u, c)| (vec![Index::Perm(u.clone())], c.clone()))
                .collect(),
            Expansion::PermTensor(x) => x
                .terms
                .iter()
                .map(|(t, c)| (t.iter().cloned().map(Index::Perm).collect(), c.clone()))
                .collect(),
            Expansion::QSym(x) => x
                .terms
                .iter()
                .map(|(s, c)| (vec![Index::Set(*s)], c.clone()))
                .collect(),
            Expansion::QSymTensor(x) => x
                .terms
                .iter()
                .map(|((a, b), c)| (vec![Index::Set(*a), Index::Set(*b)], c.clone()))
                .collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let (basis, dual, _) = self.header();
        let star = if dual { "*" } else { "" };
        let terms = self.factor_terms();
        if terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (factors, c)) in terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let magnitude = c.abs();
            if !magnitude.is_one() {
                out.push_str(&format!("{magnitude}*"));
            }
            let body: Vec<String> = factors
                .iter()
                .map(|f| format!("{basis}{star}{}", f.text()))
                .collect();
            out.push_str(&body.join(" ⊗ "));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let (basis, dual, tensor) = self.header();
        let terms: Vec<Value> = self
            .factor_terms()
            .into_iter()
            .map(|(factors, c)| {
                let mut term = Map::new();
                if tensor {
                    term.insert(
                        "index".into(),
                        Value::Array(factors.iter().map(Index::json_index).collect()),
                    );
                    if self.algebra() == Algebra::Qsym {
                        term.insert(
                            "ambient".into(),
                            Value::Array(factors.iter().map(|f| json!(f.ambient())).collect()),
                        );
                    }
                } else {
                    term.insert("index".into(), factors[0].json_index());
                    if self.algebra() == Algebra::Qsym {
                        term.insert("ambient".into(), json!(factors[0].ambient()));
                    }
                }
                term.insert("coeff".into(), coeff_json(&c));
                Value::Object(term)
            })
            .collect();
        let mut obj = Map::new();
        obj.insert("algebra".into(), json!(self.algebra().to_string()));
        obj.insert("basis".into(), json!(basis.to_string()));
        obj.insert("dual".into(), json!(dual));
        if tensor {
            obj.insert("tensor".into(), json!(true));
        }
        obj.insert("terms".into(), Value::Array(terms));
        Value::Object(obj)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| parse_err("expected a JSON object"))?;
        let algebra: Algebra = obj
            .get("algebra")
            .and_then(Value::as_str)
            .unwrap_or("ssym")
            .parse()?;
        let basis: Basis = obj
            .get("basis")
            .and_then(Value::as_str)
            .ok_or_else(|| parse_err("missing \"basis\""))?
            .parse()?;
        let dual = obj.get("dual").and_then(Value::as_bool).unwrap_or(false);
        let tensor = obj.get("tensor").and_then(Value::as_bool).unwrap_or(false);
        let terms = obj
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| parse_err("missing \"terms\""))?;
        let mut parsed: Vec<(Vec<Index>, Coeff)> = Vec::with_capacity(terms.len());
        for t in terms {
            let coeff = coeff_from_json(
                t.get("coeff")
                    .ok_or_else(|| parse_err("term without \"coeff\""))?,
            )?;
            let index = t
                .get("index")
                .ok_or_else(|| parse_err("term without \"index\""))?;
            let factors: Vec<Index> = match (algebra, tensor) {
                (Algebra::Ssym, false) => vec![Index::Perm(perm_from_json(index)?)],
                (Algebra::Ssym, true) => json_list(index)?
                    .iter()
                    .map(|i| perm_from_json(i).map(Index::Perm))
                    .collect::<Result<_>>()?,
                (Algebra::Qsym, false) => {
                    let ambient = t
                        .get("ambient")
                        .ok_or_else(|| parse_err("subset without \"ambient\""))?;
                    vec![Index::Set(subset_from_json(index, ambient)?)]
                }
                (Algebra::Qsym, true) => {
                    let ambients = json_list(
                        t.get("ambient")
                            .ok_or_else(|| parse_err("subset without \"ambient\""))?,
                    )?;
                    let indices = json_list(index)?;
                    if ambients.len() != indices.len() {
                        return Err(parse_err("\"index\" and \"ambient\" lengths differ"));
                    }
                    indices
                        .iter()
                        .zip(ambients)
                        .map(|(i, a)| subset_from_json(i, a).map(Index::Set))
                        .collect::<Result<_>>()?
                }
            };
            parsed.push((factors, coeff));
        }
        assemble(algebra, basis, dual, tensor, parsed)
    }

    /// Parse the text form. The algebra is read from the index brackets.
    pub fn parse_text(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed == "0" {
            return Err(parse_err("cannot infer the basis of \"0\""));
        }
        let mut lexer = Lexer {
            src: trimmed,
            pos: 0,
        };
        let mut header: Option<(Basis, bool)> = None;
        let mut terms: Vec<(Vec<Index>, Coeff)> = Vec::new();
        loop {
            lexer.skip_ws();
            if lexer.at_end() {
                break;
            }
            let mut sign = Coeff::one();
            if let Some(ch @ ('+' | '-')) = lexer.peek() {
                if ch == '-' {
                    sign = -sign;
                }
                lexer.bump();
                lexer.skip_ws();
            }
            let magnitude = lexer.coefficient()?;
            let mut factors = Vec::new();
            loop {
                let (basis, dual, index) = lexer.factor()?;
                match header {
                    None => header = Some((basis, dual)),
                    Some(h) if h != (basis, dual) => {
                        return Err(parse_err("mixed bases in one expansion"))
                    }
                    _ => {}
                }
                factors.push(index);
                lexer.skip_ws();
                if !lexer.eat("⊗") && !lexer.eat("(x)") {
                    break;
                }
                lexer.skip_ws();
            }
            terms.push((factors, sign * magnitude));
            lexer.skip_ws();
            if !lexer.at_end() && !matches!(lexer.peek(), Some('+') | Some('-')) {
                return Err(parse_err(&format!(
                    "unexpected input at {:?}",
                    &lexer.src[lexer.pos..]
                )));
            }
        }
        let (basis, dual) = header.ok_or_else(|| parse_err("empty expansion"))?;
        let tensor = terms.iter().any(|(f, _)| f.len() != 1);
        let algebra = match terms[0].0[0] {
            Index::Perm(_) => Algebra::Ssym,
            Index::Set(_) => Algebra::Qsym,
        };
        assemble(algebra, basis, dual, tensor, terms)
    }
}

#[derive(Clone, Debug)]
enum Index {
    Perm(Permutation),
    Set(Subset),
}

impl Index {
    fn text(&self) -> String {
        match self {
            Index::Perm(u) => format!("[{u}]"),
            Index::Set(s) => s.to_composition().to_string(),
        }
    }

    fn json_index(&self) -> Value {
        match self {
            Index::Perm(u) => json!(u.to_vec()),
            Index::Set(s) => json!(s.members()),
        }
    }

    fn ambient(&self) -> usize {
        match self {
            Index::Perm(u) => u.degree(),
            Index::Set(s) => s.ambient(),
        }
    }
}

fn assemble(
    algebra: Algebra,
    basis: Basis,
    dual: bool,
    tensor: bool,
    terms: Vec<(Vec<Index>, Coeff)>,
) -> Result<Expansion> {
    let mixed = || parse_err("index kinds do not match the algebra");
    Ok(match (algebra, tensor) {
        (Algebra::Ssym, false) => {
            let mut lc = LinComb::zero();
            for (f, c) in terms {
                match f.as_slice() {
                    [Index::Perm(u)] => lc.add_term(u.clone(), c),
                    _ => return Err(mixed()),
                }
            }
            Expansion::Perm(PermExpansion {
                basis,
                dual,
                terms: lc,
            })
        }
        (Algebra::Ssym, true) => {
            let mut lc = LinComb::zero();
            for (f, c) in terms {
                let t = f.into_iter().map(|i| match i {
                    Index::Perm(u) => Ok(u),
                    Index::Set(_) => Err(mixed()),
                });
                lc.add_term(t.collect::<Result<Vec<_>>>()?, c);
            }
            Expansion::PermTensor(TensorExpansion {
                basis,
                dual,
                terms: lc,
            })
        }
        (Algebra::Qsym, false) => {
            let mut lc = LinComb::zero();
            for (f, c) in terms {
                match f.as_slice() {
                    [Index::Set(s)] => lc.add_term(*s, c),
                    _ => return Err(mixed()),
                }
            }
            Expansion::QSym(QSymExpansion {
                basis,
                dual,
                terms: lc,
            })
        }
        (Algebra::Qsym, true) => {
            let mut lc = LinComb::zero();
            for (f, c) in terms {
                match f.as_slice() {
                    [Index::Set(a), Index::Set(b)] => lc.add_term((*a, *b), c),
                    _ => {
                        return Err(parse_err(
                            "quasi-symmetric tensors have exactly two factors",
                        ))
                    }
                }
            }
            Expansion::QSymTensor(QSymTensor {
                basis,
                dual,
                terms: lc,
            })
        }
    })
}

fn parse_err(msg: &str) -> Error {
    Error::Parse(msg.to_string())
}

fn coeff_json(c: &Coeff) -> Value {
    match c.to_i64() {
        Some(v) => json!(v),
        None => json!(c.to_string()),
    }
}

fn coeff_from_json(v: &Value) -> Result<Coeff> {
    if let Some(i) = v.as_i64() {
        return Ok(Coeff::from(i));
    }
    if let Some(s) = v.as_str() {
        return s
            .parse()
            .map_err(|_| parse_err(&format!("bad coefficient {s:?}")));
    }
    Err(parse_err(
        "coefficient must be an integer or a decimal string",
    ))
}

fn json_list(v: &Value) -> Result<&Vec<Value>> {
    v.as_array()
        .ok_or_else(|| parse_err("expected a JSON array"))
}

fn usizes(v: &Value) -> Result<Vec<usize>> {
    json_list(v)?
        .iter()
        .map(|x| {
            x.as_u64()
                .map(|n| n as usize)
                .ok_or_else(|| parse_err("expected a nonnegative integer"))
        })
        .collect()
}

fn perm_from_json(v: &Value) -> Result<Permutation> {
    Permutation::new(&usizes(v)?).map_err(|e| Error::Parse(e.to_string()))
}

fn subset_from_json(index: &Value, ambient: &Value) -> Result<Subset> {
    let n = ambient
        .as_u64()
        .ok_or_else(|| parse_err("\"ambient\" must be an integer"))? as usize;
    Subset::new(n, &usizes(index)?).map_err(|e| Error::Parse(e.to_string()))
}

/// Parse a single quasi-symmetric index: `(2,1)` or `{1,3}:4`.
pub fn parse_qsym_index(text: &str) -> Result<Subset> {
    let t = text.trim();
    if t.starts_with('(') {
        Ok(t.parse::<Composition>()?.to_subset())
    } else {
        t.parse::<Subset>()
    }
}

/// Parse a basis element or a whole expansion of the given algebra.
pub fn parse_element(text: &str, algebra: Algebra, basis: Basis, dual: bool) -> Result<Expansion> {
    let t = text.trim();
    let bare = t.starts_with(|c: char| c.is_ascii_digit() || c == '(' || c == '{')
        || t.is_empty()
        || t == "()";
    if bare {
        return Ok(match algebra {
            Algebra::Ssym => Expansion::Perm(PermExpansion {
                basis,
                dual,
                terms: LinComb::basis(t.parse::<Permutation>()?),
            }),
            Algebra::Qsym => Expansion::QSym(QSymExpansion {
                basis,
                dual,
                terms: LinComb::basis(parse_qsym_index(t)?),
            }),
        });
    }
    let x = Expansion::parse_text(t)?;
    if x.algebra() != algebra {
        return Err(parse_err(&format!("{t:?} is not an element of {algebra}")));
    }
    Ok(x)
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl Lexer<'_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.peek() {
            self.pos += c.len_utf8();
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    /// Optional `N*` or `N ` prefix.
    fn coefficient(&mut self) -> Result<Coeff> {
        let digits: String = self
            .rest()
            .chars()
            .take_while(char::is_ascii_digit)
            .collect();
        if digits.is_empty() {
            return Ok(Coeff::one());
        }
        self.pos += digits.len();
        self.skip_ws();
        self.eat("*");
        self.skip_ws();
        let c: Coeff = digits.parse().map_err(|_| parse_err("bad coefficient"))?;
        if c.is_zero() {
            return Err(parse_err("zero coefficient"));
        }
        Ok(c)
    }

    fn factor(&mut self) -> Result<(Basis, bool, Index)> {
        let basis = match self.peek() {
            Some('F') | Some('f') => Basis::F,
            Some('M') | Some('m') => Basis::M,
            _ => return Err(parse_err(&format!("expected F or M at {:?}", self.rest()))),
        };
        self.bump();
        let dual = self.eat("*");
        let index = match self.peek() {
            Some('[') => {
                let end = self
                    .rest()
                    .find(']')
                    .ok_or_else(|| parse_err("unclosed ["))?;
                let body = self.rest()[1..end].to_string();
                self.pos += end + 1;
                Index::Perm(body.parse()?)
            }
            Some('(') => {
                let end = self
                    .rest()
                    .find(')')
                    .ok_or_else(|| parse_err("unclosed ("))?;
                let body = self.rest()[..=end].to_string();
                self.pos += end + 1;
                Index::Set(body.parse::<Composition>()?.to_subset())
            }
            Some('{') => {
                let end = self
                    .rest()
                    .find('}')
                    .ok_or_else(|| parse_err("unclosed {"))?;
                let after = &self.rest()[end + 1..];
                let digits: String = after
                    .strip_prefix(':')
                    .map(|a| a.chars().take_while(char::is_ascii_digit).collect())
                    .unwrap_or_default();
                if digits.is_empty() {
                    return Err(parse_err(
                        "subset index needs an ambient degree, e.g. {1,3}:4",
                    ));
                }
                let body = self.rest()[..end + 2 + digits.len()].to_string();
                self.pos += body.len();
                Index::Set(body.parse()?)
            }
            _ => {
                return Err(parse_err(&format!(
                    "expected an index after {basis} at {:?}",
                    self.rest()
                )))
            }
        };
        Ok((basis, dual, index))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm_exp(basis: Basis, terms: &[(&str, i64)]) -> Expansion {
        let lc = terms
            .iter()
            .map(|&(w, c)| (w.parse::<Permutation>().unwrap(), Coeff::from(c)))
            .collect();
        Expansion::Perm(PermExpansion::new(basis, lc))
    }

    #[test]
    fn text_matches_expected_layout() {
        let x = perm_exp(
            Basis::F,
            &[("4123", 1), ("4132", -1), ("4213", -1), ("4321", 1)],
        );
        assert_eq!(x.to_text(), "F[4123] - F[4132] - F[4213] + F[4321]");
        let y = perm_exp(Basis::M, &[("21", -3), ("1", 2)]);
        assert_eq!(y.to_text(), "2*M[1] - 3*M[21]");
        assert_eq!(perm_exp(Basis::M, &[]).to_text(), "0");
    }

    #[test]
    fn json_matches_schema() {
        let x = perm_exp(Basis::M, &[("4123", 1)]);
        let v = x.to_json();
        assert_eq!(v["basis"], "M");
        assert_eq!(v["dual"], false);
        assert_eq!(v["terms"][0]["index"], json!([4, 1, 2, 3]));
        assert_eq!(v["terms"][0]["coeff"], 1);
        let s = Expansion::QSym(QSymExpansion::basis_element(
            Basis::F,
            Subset::new(4, &[1, 3]).unwrap(),
        ));
        let v = s.to_json();
        assert_eq!(v["terms"][0]["index"], json!([1, 3]));
        assert_eq!(v["terms"][0]["ambient"], 4);
    }

    #[test]
    fn round_trips() {
        let big = Coeff::from(i64::MAX) * Coeff::from(7);
        let mut lc: LinComb<Vec<Permutation>> = LinComb::zero();
        lc.add_term(
            vec!["21".parse().unwrap(), Permutation::empty()],
            big.clone(),
        );
        lc.add_term(
            vec!["1".parse().unwrap(), "1".parse().unwrap()],
            Coeff::from(-2),
        );
        let mut q: LinComb<(Subset, Subset)> = LinComb::zero();
        q.add_term(
            (Subset::empty(2), Subset::new(3, &[2]).unwrap()),
            Coeff::from(5),
        );
        let samples = vec![
            perm_exp(
                Basis::F,
                &[("", 1), ("312", -4), ("10,1,2,3,4,5,6,7,8,9", 1)],
            ),
            Expansion::Perm(PermExpansion::new_dual(
                Basis::M,
                LinComb::basis("231".parse().unwrap()),
            )),
            Expansion::PermTensor(TensorExpansion {
                basis: Basis::M,
                dual: false,
                terms: lc,
            }),
            Expansion::QSym(QSymExpansion::new_dual(
                Basis::M,
                LinComb::from_term(Subset::new(5, &[1, 4]).unwrap(), -1),
            )),
            Expansion::QSymTensor(QSymTensor {
                basis: Basis::F,
                dual: false,
                terms: q,
            }),
        ];
        for x in samples {
            assert_eq!(
                Expansion::from_json(&x.to_json()).unwrap(),
                x,
                "{}",
                x.to_text()
            );
            let text = x.to_text();
            assert_eq!(Expansion::parse_text(&text).unwrap(), x, "{text}");
        }
    }

    #[test]
    fn parses_inputs() {
        let x = parse_element("4123", Algebra::Ssym, Basis::M, false).unwrap();
        assert_eq!(x, perm_exp(Basis::M, &[("4123", 1)]));
        let q = parse_element("(2,1)", Algebra::Qsym, Basis::M, false).unwrap();
        assert_eq!(
            q,
            Expansion::QSym(QSymExpansion::basis_element(
                Basis::M,
                Subset::new(3, &[2]).unwrap()
            ))
        );
        let q2 = parse_element("{2}:3", Algebra::Qsym, Basis::M, false).unwrap();
        assert_eq!(q, q2);
        assert!(parse_element("F[12] + M[21]", Algebra::Ssym, Basis::F, false).is_err());
        assert!(parse_element("F(2)", Algebra::Ssym, Basis::F, false).is_err());
        assert!(Expansion::parse_text("F[12] F[21]").is_err());
        assert!(
            Expansion::from_json(&json!({"basis":"M","terms":[{"index":[1,1],"coeff":1}]}))
                .is_err()
        );
    }
}
