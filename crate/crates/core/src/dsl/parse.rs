use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use super::lex::{Lexer, ParseError, Pos, Token};
use super::AtlasDocument;
use crate::bundle::{Atlas, BundleKind, Transition};
use crate::perm::Perm;
use crate::superalg::{
    Chart, ChartRef, Coeff, CoordName, CoordinateSymbol, Parity, Polynomial, PolynomialMap,
    Weight,
};
use crate::symmetry::{ActionTable, Flavor};

const KEYWORDS: &[&str] = &[
    "kind",
    "nweighted",
    "nvector",
    "slots",
    "degree",
    "nmanifold",
    "chart",
    "transition",
    "inverse",
    "triple",
    "action",
    "sigma",
    "flavor",
    "symmetric",
    "skew",
    "even",
    "odd",
];

struct Parser {
    tokens: Vec<(Token, Pos)>,
    at: usize,
    kind: Option<BundleKind>,
    nmanifold: bool,
    charts: Vec<ChartRef>,
    chart_names: BTreeMap<String, usize>,
    transitions: Vec<Transition>,
    triples: Vec<[String; 3]>,
    flavor: Option<Flavor>,
    actions: BTreeMap<Perm, Vec<PolynomialMap>>,
}

impl Parser {
    fn new(tokens: Vec<(Token, Pos)>) -> Self {
        Parser {
            tokens,
            at: 0,
            kind: None,
            nmanifold: false,
            charts: Vec::new(),
            chart_names: BTreeMap::new(),
            transitions: Vec::new(),
            triples: Vec::new(),
            flavor: None,
            actions: BTreeMap::new(),
        }
    }

    fn pos(&self) -> Pos {
        self.tokens
            .get(self.at)
            .or_else(|| self.tokens.last())
            .map(|(_, p)| *p)
            .unwrap_or(Pos { line: 1, col: 1 })
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|(t, _)| t)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.at).map(|(t, _)| t.clone());
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::new(self.pos(), msg))
    }

    fn expect(&mut self, want: &Token) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if t == want => {
                self.bump();
                Ok(())
            }
            Some(t) => {
                let t = t.clone();
                self.err(format!("expected {want}, found {t}"))
            }
            None => self.err(format!("expected {want}, found end of input")),
        }
    }

    fn peek_keyword(&self) -> Option<&str> {
        match self.peek() {
            Some(Token::Name(n)) if n.tuple.is_none() && n.pi.is_empty() => {
                Some(n.base.as_str())
            }
            _ => None,
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        if self.peek_keyword() == Some(kw) {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected `{kw}`"))
        }
    }

    fn take_name(&mut self, what: &str) -> Result<CoordName, ParseError> {
        match self.peek() {
            Some(Token::Name(n)) => {
                let n = n.clone();
                self.bump();
                Ok(n)
            }
            _ => self.err(format!("expected {what}")),
        }
    }

    fn take_int<T: std::str::FromStr>(&mut self, what: &str) -> Result<T, ParseError> {
        match self.peek() {
            Some(Token::Int(s)) => {
                let parsed = s.parse::<T>();
                let s = s.clone();
                self.bump();
                parsed.map_err(|_| ParseError::new(self.pos(), format!("{what} `{s}` out of range")))
            }
            _ => self.err(format!("expected {what}")),
        }
    }

    fn parse_weight_tuple(&mut self) -> Result<Weight, ParseError> {
        self.expect(&Token::LParen)?;
        let mut entries = Vec::new();
        loop {
            entries.push(self.take_int::<u32>("weight entry")?);
            match self.peek() {
                Some(Token::Comma) => {
                    self.bump();
                }
                Some(Token::RParen) => {
                    self.bump();
                    break;
                }
                _ => return self.err("expected `,` or `)` in weight tuple"),
            }
        }
        Ok(Weight(entries))
    }

    fn parse_kind(&mut self) -> Result<(), ParseError> {
        if self.kind.is_some() {
            return self.err("duplicate `kind` declaration");
        }
        self.bump(); // kind
        let kind = match self.peek_keyword() {
            Some("nweighted") => {
                self.bump();
                self.expect_keyword("degree")?;
                BundleKind::nweighted(self.take_int::<u32>("degree")?)
            }
            Some("nvector") => {
                self.bump();
                BundleKind::nvector(self.take_int::<usize>("multiplicity")?)
            }
            Some("slots") => {
                self.bump();
                BundleKind::from_caps(self.parse_weight_tuple()?.0)
            }
            _ => return self.err("expected `nweighted`, `nvector`, or `slots`"),
        };
        self.expect(&Token::Semi)?;
        self.kind = Some(kind);
        Ok(())
    }

    fn parse_chart(&mut self) -> Result<(), ParseError> {
        self.bump(); // chart
        let kind = match &self.kind {
            Some(k) => k.clone(),
            None => return self.err("`kind` must be declared before charts"),
        };
        let name_pos = self.pos();
        let name = self.take_name("chart name")?;
        if KEYWORDS.contains(&name.base.as_str()) {
            return Err(ParseError::new(name_pos, "reserved word as chart name"));
        }
        self.expect(&Token::LBrace)?;
        let mut coords = Vec::new();
        while self.peek() != Some(&Token::RBrace) {
            let cpos = self.pos();
            let cname = self.take_name("coordinate name")?;
            if KEYWORDS.contains(&cname.base.as_str()) {
                return Err(ParseError::new(cpos, "reserved word as coordinate name"));
            }
            let weight = if self.peek() == Some(&Token::At) {
                self.bump();
                self.parse_weight_tuple()?
            } else if let Some(tuple) = &cname.tuple {
                Weight(tuple.iter().map(|&v| v as u32).collect())
            } else {
                return Err(ParseError::new(cpos, "coordinate needs a weight annotation"));
            };
            if weight.slots() != kind.slots() {
                return Err(ParseError::new(
                    cpos,
                    format!(
                        "weight {weight} has {} entries, kind `{kind}` needs {}",
                        weight.slots(),
                        kind.slots()
                    ),
                ));
            }
            for (slot, (&w, &cap)) in weight.0.iter().zip(kind.caps()).enumerate() {
                if w > cap {
                    return Err(ParseError::new(
                        cpos,
                        format!(
                            "weight {weight} out of range: slot {} exceeds the `{kind}` cap {cap}",
                            slot + 1
                        ),
                    ));
                }
            }
            let parity = match self.peek_keyword() {
                Some("even") => {
                    self.bump();
                    Parity::Even
                }
                Some("odd") => {
                    self.bump();
                    Parity::Odd
                }
                _ => return self.err("expected parity keyword `even` or `odd`"),
            };
            self.expect(&Token::Semi)?;
            coords.push(CoordinateSymbol::new(cname, parity, weight));
        }
        self.expect(&Token::RBrace)?;
        let chart = Chart::new(name, coords)
            .map_err(|e| ParseError::new(name_pos, e.to_string()))?;
        let rendered = chart.name().render();
        if self
            .chart_names
            .insert(rendered.clone(), self.charts.len())
            .is_some()
        {
            return Err(ParseError::new(
                name_pos,
                format!("duplicate chart `{rendered}`"),
            ));
        }
        self.charts.push(chart);
        Ok(())
    }

    fn resolve_chart(&self, name: &CoordName, pos: Pos) -> Result<ChartRef, ParseError> {
        self.chart_names
            .get(&name.render())
            .map(|&i| self.charts[i].clone())
            .ok_or_else(|| ParseError::new(pos, format!("unknown chart `{}`", name.render())))
    }

    /// Assignments keyed by target-coordinate name; unassigned coordinates
    /// default to the same-named source coordinate.
    fn build_map(
        &self,
        source: &ChartRef,
        target: &ChartRef,
        assigns: Vec<(CoordName, Pos, Polynomial)>,
    ) -> Result<PolynomialMap, ParseError> {
        let mut images: Vec<Option<Polynomial>> = vec![None; target.len()];
        for (name, pos, poly) in assigns {
            let idx = target.find(&name).ok_or_else(|| {
                ParseError::new(
                    pos,
                    format!(
                        "`{}` is not a coordinate of chart `{}`",
                        name.render(),
                        target.name()
                    ),
                )
            })?;
            if images[idx].is_some() {
                return Err(ParseError::new(
                    pos,
                    format!("duplicate assignment for `{}`", name.render()),
                ));
            }
            images[idx] = Some(poly);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, img)| match img {
                Some(p) => Ok(p),
                None => {
                    let name = &target.coord(i).name;
                    let j = source.find(name).ok_or_else(|| {
                        ParseError::new(
                            self.pos(),
                            format!(
                                "no assignment for `{}` and no same-named source coordinate",
                                name.render()
                            ),
                        )
                    })?;
                    Ok(Polynomial::coordinate(source.clone(), j))
                }
            })
            .collect::<Result<Vec<_>, ParseError>>()?;
        PolynomialMap::new(source.clone(), target.clone(), images)
            .map_err(|e| ParseError::new(self.pos(), e.to_string()))
    }

    fn parse_assignments(
        &mut self,
        source: &ChartRef,
        stop_kw: Option<&str>,
        arrow: bool,
    ) -> Result<Vec<(CoordName, Pos, Polynomial)>, ParseError> {
        let mut assigns = Vec::new();
        loop {
            if self.peek() == Some(&Token::RBrace) {
                break;
            }
            if let (Some(kw), Some(stop)) = (self.peek_keyword(), stop_kw) {
                if kw == stop {
                    break;
                }
            }
            let pos = self.pos();
            let name = self.take_name("coordinate name")?;
            self.expect(if arrow { &Token::Arrow } else { &Token::Assign })?;
            let poly = self.parse_expr(source)?;
            self.expect(&Token::Semi)?;
            assigns.push((name, pos, poly));
        }
        Ok(assigns)
    }

    fn parse_transition(&mut self) -> Result<(), ParseError> {
        self.bump(); // transition
        let spos = self.pos();
        let sname = self.take_name("source chart")?;
        let source = self.resolve_chart(&sname, spos)?;
        self.expect(&Token::Arrow)?;
        let tpos = self.pos();
        let tname = self.take_name("target chart")?;
        let target = self.resolve_chart(&tname, tpos)?;
        self.expect(&Token::LBrace)?;
        let fwd = self.parse_assignments(&source, Some("inverse"), false)?;
        self.expect_keyword("inverse")?;
        self.expect(&Token::LBrace)?;
        let bwd = self.parse_assignments(&target, None, false)?;
        self.expect(&Token::RBrace)?;
        self.expect(&Token::RBrace)?;
        let map = self.build_map(&source, &target, fwd)?;
        let inverse = self.build_map(&target, &source, bwd)?;
        self.transitions.push(Transition { map, inverse });
        Ok(())
    }

    fn parse_triple(&mut self) -> Result<(), ParseError> {
        self.bump(); // triple
        let mut names = Vec::new();
        for _ in 0..3 {
            let pos = self.pos();
            let n = self.take_name("chart name")?;
            self.resolve_chart(&n, pos)?;
            names.push(n.render());
        }
        self.expect(&Token::Semi)?;
        self.triples
            .push([names[0].clone(), names[1].clone(), names[2].clone()]);
        Ok(())
    }

    fn parse_flavor(&mut self) -> Result<(), ParseError> {
        self.bump(); // flavor
        let f = match self.peek_keyword() {
            Some("symmetric") => Flavor::Symmetric,
            Some("skew") => Flavor::Skew,
            _ => return self.err("expected `symmetric` or `skew`"),
        };
        self.bump();
        self.expect(&Token::Semi)?;
        self.flavor = Some(f);
        Ok(())
    }

    fn parse_action(&mut self) -> Result<(), ParseError> {
        self.bump(); // action
        self.expect_keyword("sigma")?;
        self.expect(&Token::LParen)?;
        let mut one_line = Vec::new();
        while self.peek() != Some(&Token::RParen) {
            one_line.push(self.take_int::<usize>("permutation image")?);
        }
        self.expect(&Token::RParen)?;
        let perm_pos = self.pos();
        let sigma = Perm::new(one_line)
            .map_err(|e| ParseError::new(perm_pos, e.to_string()))?;
        self.expect(&Token::LBrace)?;
        let mut maps: Vec<Option<PolynomialMap>> = vec![None; self.charts.len()];
        if self.peek_keyword() == Some("chart") {
            while self.peek_keyword() == Some("chart") {
                self.bump();
                let cpos = self.pos();
                let cname = self.take_name("chart name")?;
                let chart = self.resolve_chart(&cname, cpos)?;
                let idx = self.chart_names[&cname.render()];
                self.expect(&Token::LBrace)?;
                let arrows = self.parse_assignments(&chart, None, true)?;
                self.expect(&Token::RBrace)?;
                maps[idx] = Some(self.build_map(&chart, &chart, arrows)?);
            }
        } else if self.charts.len() == 1 {
            let chart = self.charts[0].clone();
            let arrows = self.parse_assignments(&chart, None, true)?;
            maps[0] = Some(self.build_map(&chart, &chart, arrows)?);
        } else if self.peek() != Some(&Token::RBrace) {
            return self.err("multi-chart atlases need `chart` sub-blocks in actions");
        }
        self.expect(&Token::RBrace)?;
        let maps = maps
            .into_iter()
            .enumerate()
            .map(|(i, m)| m.unwrap_or_else(|| PolynomialMap::identity(self.charts[i].clone())))
            .collect();
        if self.actions.insert(sigma, maps).is_some() {
            return Err(ParseError::new(perm_pos, "duplicate action entry"));
        }
        Ok(())
    }

    // expr := term (('+'|'-') term)*
    fn parse_expr(&mut self, chart: &ChartRef) -> Result<Polynomial, ParseError> {
        let mut acc = self.parse_term(chart)?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    let rhs = self.parse_term(chart)?;
                    acc = acc.add(&rhs).expect("same chart");
                }
                Some(Token::Minus) => {
                    self.bump();
                    let rhs = self.parse_term(chart)?;
                    acc = acc.sub(&rhs).expect("same chart");
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_term(&mut self, chart: &ChartRef) -> Result<Polynomial, ParseError> {
        let mut acc = self.parse_factor(chart)?;
        while self.peek() == Some(&Token::Star) {
            self.bump();
            let rhs = self.parse_factor(chart)?;
            acc = acc.mul(&rhs).expect("same chart");
        }
        Ok(acc)
    }

    fn parse_factor(&mut self, chart: &ChartRef) -> Result<Polynomial, ParseError> {
        if self.peek() == Some(&Token::Minus) {
            self.bump();
            return Ok(self.parse_factor(chart)?.neg());
        }
        let atom = self.parse_atom(chart)?;
        if self.peek() == Some(&Token::Caret) {
            self.bump();
            let exp: u32 = self.take_int("exponent")?;
            return Ok(atom.pow(exp).expect("same chart"));
        }
        Ok(atom)
    }

    fn parse_atom(&mut self, chart: &ChartRef) -> Result<Polynomial, ParseError> {
        match self.peek().cloned() {
            Some(Token::Int(num)) => {
                self.bump();
                let numer: BigInt = num.parse().expect("digits");
                let denom: BigInt = if self.peek() == Some(&Token::Slash) {
                    self.bump();
                    let d: String = match self.bump() {
                        Some(Token::Int(d)) => d,
                        _ => return self.err("expected denominator"),
                    };
                    let d: BigInt = d.parse().expect("digits");
                    if num_traits::Zero::is_zero(&d) {
                        return self.err("zero denominator");
                    }
                    d
                } else {
                    BigInt::one()
                };
                Ok(Polynomial::constant(chart.clone(), Coeff::new(numer, denom)))
            }
            Some(Token::Name(n)) => {
                let pos = self.pos();
                self.bump();
                let idx = chart.find(&n).ok_or_else(|| {
                    ParseError::new(
                        pos,
                        format!(
                            "unknown coordinate `{}` in chart `{}`",
                            n.render(),
                            chart.name()
                        ),
                    )
                })?;
                Ok(Polynomial::coordinate(chart.clone(), idx))
            }
            Some(Token::LParen) => {
                self.bump();
                let e = self.parse_expr(chart)?;
                self.expect(&Token::RParen)?;
                Ok(e)
            }
            Some(t) => self.err(format!("expected a coordinate, number, or `(`, found {t}")),
            None => self.err("unexpected end of input in expression"),
        }
    }

    fn finish(mut self) -> Result<AtlasDocument, ParseError> {
        let kind = match self.kind.take() {
            Some(k) => k,
            None => return self.err("missing `kind` declaration"),
        };
        if self.charts.is_empty() {
            return self.err("document declares no charts");
        }
        let end = self.pos();
        let atlas = Atlas::new(
            kind,
            self.nmanifold,
            self.charts.clone(),
            std::mem::take(&mut self.transitions),
            std::mem::take(&mut self.triples),
        )
        .map_err(|e| ParseError::new(end, e.to_string()))?;
        let action = if self.actions.is_empty() {
            None
        } else {
            let n = self.actions.keys().next().expect("nonempty").len();
            if self.actions.keys().any(|s| s.len() != n) {
                return Err(ParseError::new(end, "action entries of mixed sizes"));
            }
            let mut table = ActionTable::new(n, self.flavor.unwrap_or(Flavor::Symmetric));
            for (sigma, maps) in std::mem::take(&mut self.actions) {
                table
                    .insert(sigma, maps)
                    .map_err(|e| ParseError::new(end, e.to_string()))?;
            }
            table
                .complete(&atlas)
                .map_err(|e| ParseError::new(end, e.to_string()))?;
            Some(table)
        };
        Ok(AtlasDocument { atlas, action })
    }

    fn parse_document(mut self) -> Result<AtlasDocument, ParseError> {
        while self.peek().is_some() {
            match self.peek_keyword() {
                Some("kind") => self.parse_kind()?,
                Some("nmanifold") => {
                    self.bump();
                    self.expect(&Token::Semi)?;
                    self.nmanifold = true;
                }
                Some("chart") => self.parse_chart()?,
                Some("transition") => self.parse_transition()?,
                Some("triple") => self.parse_triple()?,
                Some("flavor") => self.parse_flavor()?,
                Some("action") => self.parse_action()?,
                _ => {
                    let t = self.peek().cloned();
                    return self.err(match t {
                        Some(t) => format!("expected a declaration, found {t}"),
                        None => "expected a declaration".into(),
                    });
                }
            }
        }
        self.finish()
    }
}

/// Parse a `.gsa` document into an atlas and optional action table.
pub fn parse_document(src: &str) -> Result<AtlasDocument, ParseError> {
    let tokens = Lexer::new(src).tokenize()?;
    Parser::new(tokens).parse_document()
}

/// Parse a single polynomial expression against a chart (test and example
/// ergonomics).
pub fn parse_polynomial(chart: &ChartRef, src: &str) -> Result<Polynomial, ParseError> {
    let tokens = Lexer::new(src).tokenize()?;
    let mut p = Parser::new(tokens);
    let poly = p.parse_expr(chart)?;
    if p.peek().is_some() {
        return Err(ParseError::new(p.pos(), "trailing input after expression"));
    }
    Ok(poly)
}
