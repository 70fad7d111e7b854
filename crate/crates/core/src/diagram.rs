//! Planar diagram codes and Wirtinger presentations.
//!
//! A crossing `X[a,b,c,d]` lists its four edge labels counterclockwise
//! starting at the incoming understrand `a`; edges are numbered `1..2n`
//! along the orientation of the knot, so the understrand exits at
//! `c = a+1` and the overstrand runs through the consecutive pair of
//! `{b, d}`.
//!
//! Crossing sign convention (pinned by the built-in trefoil):
//!
//! ```text
//!           ^ c                          ^ c
//!           |                            |
//!   d <-----+----- b            b -------+-----> d
//!           |                            |
//!           | a                          | a
//!
//!        sign +1                      sign -1
//! ```
//!
//! With the understrand drawn upward, a crossing is positive when the
//! overstrand runs from `b` to `d` (right to left), i.e. when `d = b+1`
//! modulo `2n`. Either consistent choice produces the same knot group; this
//! one makes the built-in trefoil match its classical three-generator
//! presentation `m3*m2 = m2*m1 = m1*m3`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::words::GroupWord;

/// One crossing of a planar diagram: four edge labels in the standard
/// cyclic convention plus the orientation-derived sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PdCrossing {
    pub edges: [u32; 4],
    pub sign: i8,
}

/// A validated planar diagram code for an oriented knot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdCode {
    crossings: Vec<PdCrossing>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PdError {
    #[error("malformed token {0:?}")]
    MalformedToken(String),
    #[error("edge label {label} appears {count} times (expected exactly 2)")]
    BadLabelCount { label: u32, count: usize },
    #[error("edge labels must be exactly 1..{expected}")]
    BadLabelRange { expected: u32 },
    #[error("understrand at crossing {index} does not exit at the successor edge")]
    BrokenUnderstrand { index: usize },
    #[error("overstrand at crossing {index} is not a consecutive edge pair")]
    BrokenOverstrand { index: usize },
    #[error("edge labels do not form a single closed traversal (multi-component diagram?)")]
    NotSingleComponent,
    #[error("unknown built-in knot {0:?}")]
    UnknownKnot(String),
    #[error("knot reference needs a name or a pd code")]
    MissingReference,
}

impl PdCode {
    pub fn crossings(&self) -> &[PdCrossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        2 * self.crossings.len()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| i64::from(c.sign)).sum()
    }

    /// Canonical text rendering, parseable by [`parse_pd`].
    pub fn render(&self) -> String {
        self.crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.edges;
                format!("X[{a},{b},{cc},{d}]")
            })
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Parses `X[a,b,c,d],...` or the whitespace form `X a b c d` per line.
/// The empty string is the round unknot diagram.
pub fn parse_pd(text: &str) -> Result<PdCode, PdError> {
    let raw = tokenize(text)?;
    let n = raw.len();
    let edge_count = 2 * n as u32;

    // every label appears exactly twice and the label set is 1..2n
    let mut counts = vec![0usize; edge_count as usize + 1];
    for quad in &raw {
        for &e in quad {
            if e == 0 || e > edge_count {
                return Err(PdError::BadLabelRange {
                    expected: edge_count,
                });
            }
            counts[e as usize] += 1;
        }
    }
    for (label, &count) in counts.iter().enumerate().skip(1) {
        if count != 2 {
            return Err(PdError::BadLabelCount {
                label: label as u32,
                count,
            });
        }
    }

    let succ = |e: u32| -> u32 { e % edge_count + 1 };
    let mut crossings = Vec::with_capacity(n);
    let mut in_edges = vec![false; edge_count as usize + 1];
    let mut out_edges = vec![false; edge_count as usize + 1];
    for (index, &[a, b, c, d]) in raw.iter().enumerate() {
        if succ(a) != c {
            return Err(PdError::BrokenUnderstrand { index });
        }
        // the overstrand direction decides the sign
        let sign = if succ(b) == d {
            1
        } else if succ(d) == b {
            -1
        } else {
            return Err(PdError::BrokenOverstrand { index });
        };
        let over_in = if sign == 1 { b } else { d };
        let over_out = if sign == 1 { d } else { b };
        for e in [a, over_in] {
            if std::mem::replace(&mut in_edges[e as usize], true) {
                return Err(PdError::NotSingleComponent);
            }
        }
        for e in [c, over_out] {
            if std::mem::replace(&mut out_edges[e as usize], true) {
                return Err(PdError::NotSingleComponent);
            }
        }
        crossings.push(PdCrossing {
            edges: [a, b, c, d],
            sign,
        });
    }

    Ok(PdCode { crossings })
}

fn tokenize(text: &str) -> Result<Vec<[u32; 4]>, PdError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    if text.contains('[') {
        let mut rest = text;
        loop {
            rest = rest.trim_start_matches(|c: char| c == ',' || c.is_whitespace());
            if rest.is_empty() {
                break;
            }
            let body_start = rest
                .strip_prefix('X')
                .and_then(|r| r.trim_start().strip_prefix('['))
                .ok_or_else(|| PdError::MalformedToken(head(rest)))?;
            let close = body_start
                .find(']')
                .ok_or_else(|| PdError::MalformedToken(head(rest)))?;
            let body = &body_start[..close];
            out.push(parse_quad(body)?);
            rest = &body_start[close + 1..];
        }
    } else {
        // line format: X a b c d
        let mut tokens = text.split_whitespace().peekable();
        while tokens.peek().is_some() {
            let tag = tokens.next().unwrap();
            if tag != "X" {
                return Err(PdError::MalformedToken(tag.to_owned()));
            }
            let mut quad = [0u32; 4];
            for slot in &mut quad {
                let t = tokens
                    .next()
                    .ok_or_else(|| PdError::MalformedToken(tag.to_owned()))?;
                *slot = t
                    .parse()
                    .map_err(|_| PdError::MalformedToken(t.to_owned()))?;
            }
            out.push(quad);
        }
    }
    Ok(out)
}

fn parse_quad(body: &str) -> Result<[u32; 4], PdError> {
    let parts: Vec<&str> = body.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(PdError::MalformedToken(format!("X[{body}]")));
    }
    let mut quad = [0u32; 4];
    for (slot, part) in quad.iter_mut().zip(&parts) {
        *slot = part
            .parse()
            .map_err(|_| PdError::MalformedToken(format!("X[{body}]")))?;
    }
    Ok(quad)
}

fn head(s: &str) -> String {
    s.chars().take(16).collect()
}

/// One Wirtinger relation, stated as `lhs = rhs` over the meridian
/// generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: GroupWord,
    pub rhs: GroupWord,
}

/// The Wirtinger presentation of a knot group derived from a diagram:
/// one meridian generator per arc, one conjugation relation per crossing,
/// conjugator words `g_t` with `m_t = g_t^{-1} m_1 g_t`, and the
/// zero-framed longitude. `source` records where the presentation came
/// from and is ignored by equality.
#[derive(Clone, Debug, Eq)]
pub struct WirtingerPresentation {
    pub n_generators: usize,
    pub relations: Vec<Relation>,
    pub conjugators: Vec<GroupWord>,
    pub longitude: GroupWord,
    pub writhe: i64,
    pub source: KnotRef,
}

impl PartialEq for WirtingerPresentation {
    fn eq(&self, other: &WirtingerPresentation) -> bool {
        self.n_generators == other.n_generators
            && self.relations == other.relations
            && self.conjugators == other.conjugators
            && self.longitude == other.longitude
            && self.writhe == other.writhe
    }
}

/// Computes the Wirtinger presentation of a validated diagram.
///
/// The walk starts at the arc containing edge 1 and accumulates signed
/// overstrand letters; the longitude is the full accumulated word times
/// `m1^{-writhe}`, which has exponent sum zero.
pub fn wirtinger(pd: &PdCode) -> WirtingerPresentation {
    let n = pd.crossing_count();
    let source = KnotRef::from_pd(&pd.render());
    if n == 0 {
        return WirtingerPresentation {
            n_generators: 1,
            relations: Vec::new(),
            conjugators: vec![GroupWord::identity()],
            longitude: GroupWord::identity(),
            writhe: 0,
            source,
        };
    }

    // arcs end where the strand passes under; arc k ends at the k-th
    // smallest under-in edge, and edge 1 always lies on arc 1
    let mut breaks: Vec<u32> = pd.crossings.iter().map(|c| c.edges[0]).collect();
    breaks.sort_unstable();
    let arc_of_edge = |e: u32| -> usize {
        match breaks.binary_search(&e) {
            Ok(i) => i + 1,
            Err(i) => {
                if i == breaks.len() {
                    1
                } else {
                    i + 1
                }
            }
        }
    };

    let mut relations = Vec::with_capacity(n);
    for c in &pd.crossings {
        let [a, b, _, d] = c.edges;
        let u_in = arc_of_edge(a);
        let u_out = arc_of_edge(c.edges[2]);
        let over = arc_of_edge(b);
        debug_assert_eq!(over, arc_of_edge(d), "overstrand edges lie on one arc");
        let o = GroupWord::generator_power(over, i64::from(c.sign));
        let rhs = o.invert().concat(&GroupWord::generator(u_in)).concat(&o);
        relations.push(Relation {
            lhs: GroupWord::generator(u_out),
            rhs,
        });
    }

    // walk the knot from arc 1, accumulating the signed overstrand letter
    // each time the strand passes under a crossing
    let mut conjugators = Vec::with_capacity(n);
    let mut acc = GroupWord::identity();
    conjugators.push(acc.clone());
    for (k, &b) in breaks.iter().enumerate() {
        let crossing = pd
            .crossings
            .iter()
            .find(|c| c.edges[0] == b)
            .expect("break edge is an under-in edge");
        let over = arc_of_edge(crossing.edges[1]);
        acc = acc.concat(&GroupWord::generator_power(over, i64::from(crossing.sign)));
        if k + 1 < n {
            conjugators.push(acc.clone());
        }
    }

    let writhe = pd.writhe();
    let longitude = acc.concat(&GroupWord::generator_power(1, -writhe));
    debug_assert_eq!(longitude.linking_number(), 0, "longitude is zero-framed");

    WirtingerPresentation {
        n_generators: n,
        relations,
        conjugators,
        longitude,
        writhe,
        source,
    }
}

impl WirtingerPresentation {
    pub fn generator_count(&self) -> usize {
        self.n_generators
    }
}

impl fmt::Display for WirtingerPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generators: {}", self.n_generators)?;
        for r in &self.relations {
            writeln!(f, "  {} = {}", r.lhs, r.rhs)?;
        }
        writeln!(f, "longitude: {} (writhe {})", self.longitude, self.writhe)
    }
}

/// Built-in knot table addressable by name.
pub fn builtin_pd(name: &str) -> Option<&'static str> {
    let key = name.trim().to_ascii_lowercase().replace(['-', ' '], "_");
    match key.as_str() {
        "unknot" | "0_1" | "01" => Some(""),
        "trefoil" | "3_1" | "31" => Some("X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]"),
        "figure_eight" | "figure8" | "fig8" | "4_1" | "41" => {
            Some("X[4,1,5,2],X[2,8,3,7],X[8,5,1,6],X[6,4,7,3]")
        }
        _ => None,
    }
}

pub fn builtin_names() -> &'static [&'static str] {
    &["unknot", "trefoil", "figure-eight"]
}

/// A resolvable reference to a knot diagram: a built-in name, an explicit
/// pd code, or both (the pd code wins when present).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct KnotRef {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pd: Option<String>,
}

impl KnotRef {
    pub fn named(name: &str) -> KnotRef {
        KnotRef {
            name: Some(name.to_owned()),
            pd: builtin_pd(name).map(str::to_owned),
        }
    }

    pub fn from_pd(pd: &str) -> KnotRef {
        KnotRef {
            name: None,
            pd: Some(pd.to_owned()),
        }
    }

    pub fn pd_code(&self) -> Result<PdCode, PdError> {
        if let Some(pd) = &self.pd {
            return parse_pd(pd);
        }
        if let Some(name) = &self.name {
            let pd = builtin_pd(name).ok_or_else(|| PdError::UnknownKnot(name.clone()))?;
            return parse_pd(pd);
        }
        Err(PdError::MissingReference)
    }

    pub fn presentation(&self) -> Result<Arc<WirtingerPresentation>, PdError> {
        let mut pres = wirtinger(&self.pd_code()?);
        pres.source.name = self.name.clone();
        Ok(Arc::new(pres))
    }
}

impl fmt::Display for KnotRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.name, &self.pd) {
            (Some(n), _) => write!(f, "{n}"),
            (None, Some(pd)) => write!(f, "pd:{pd}"),
            (None, None) => write!(f, "<unresolved>"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{Field, Matrix, Scalar};

    fn trefoil() -> PdCode {
        parse_pd(builtin_pd("trefoil").unwrap()).unwrap()
    }

    #[test]
    fn parse_trefoil() {
        let pd = trefoil();
        assert_eq!(pd.crossing_count(), 3);
        assert_eq!(pd.writhe(), 3);
    }

    #[test]
    fn parse_line_format() {
        let pd = parse_pd("X 1 4 2 5\nX 3 6 4 1\nX 5 2 6 3").unwrap();
        assert_eq!(pd, trefoil());
    }

    #[test]
    fn parse_empty_is_unknot() {
        let pd = parse_pd("").unwrap();
        assert_eq!(pd.crossing_count(), 0);
        let pres = wirtinger(&pd);
        assert_eq!(pres.n_generators, 1);
        assert!(pres.relations.is_empty());
        assert!(pres.conjugators[0].is_identity());
        assert!(pres.longitude.is_identity());
    }

    #[test]
    fn parse_malformed_arity() {
        assert!(matches!(
            parse_pd("X[1,2,3]"),
            Err(PdError::MalformedToken(_))
        ));
    }

    #[test]
    fn parse_repeated_label() {
        // edge 1 enters twice: caught by the traversal-slot bookkeeping
        assert!(matches!(
            parse_pd("X[1,1,2,2]"),
            Err(PdError::NotSingleComponent)
        ));
        assert!(matches!(
            parse_pd("X[1,4,2,5],X[3,6,4,1],X[5,2,6,4]"),
            Err(PdError::BadLabelCount { .. })
        ));
    }

    #[test]
    fn parse_link_rejected() {
        // Hopf-link style labels fail the single-traversal checks
        let err = parse_pd("X[2,4,1,3],X[4,2,3,1]").unwrap_err();
        assert!(matches!(
            err,
            PdError::BrokenUnderstrand { .. } | PdError::NotSingleComponent
        ));
    }

    #[test]
    fn kink_reduces_to_identity_longitude() {
        let pd = parse_pd("X[1,2,2,1]").unwrap();
        let pres = wirtinger(&pd);
        assert_eq!(pres.n_generators, 1);
        assert!(pres.longitude.is_identity());
        assert_eq!(pres.relations.len(), 1);
        assert_eq!(pres.relations[0].lhs, pres.relations[0].rhs);
    }

    #[test]
    fn trefoil_presentation_shape() {
        let pres = wirtinger(&trefoil());
        assert_eq!(pres.n_generators, 3);
        assert_eq!(pres.relations.len(), 3);
        assert_eq!(pres.writhe, 3);
        assert!(pres.conjugators[0].is_identity());
        assert_eq!(pres.conjugators.len(), 3);
        assert_eq!(pres.longitude.linking_number(), 0);
        for r in &pres.relations {
            assert_eq!(r.lhs.linking_number(), r.rhs.linking_number());
        }
    }

    #[test]
    fn figure_eight_presentation_shape() {
        let pd = parse_pd(builtin_pd("4_1").unwrap()).unwrap();
        assert_eq!(pd.writhe(), 0);
        let pres = wirtinger(&pd);
        assert_eq!(pres.n_generators, 4);
        assert_eq!(pres.relations.len(), 4);
        assert_eq!(pres.writhe, 0);
        assert_eq!(pres.longitude.linking_number(), 0);
        for r in &pres.relations {
            assert_eq!(r.lhs.linking_number(), r.rhs.linking_number());
        }
    }

    #[test]
    fn builtin_aliases() {
        assert_eq!(builtin_pd("3_1"), builtin_pd("Trefoil"));
        assert_eq!(builtin_pd("figure-eight"), builtin_pd("4_1"));
        assert!(builtin_pd("5_2").is_none());
    }

    #[test]
    fn knot_ref_resolution() {
        assert!(KnotRef::named("trefoil").presentation().is_ok());
        assert!(KnotRef::named("nope").pd_code().is_err());
        assert!(KnotRef::default().pd_code().is_err());
        let r = KnotRef::from_pd("X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]");
        assert_eq!(r.presentation().unwrap().n_generators, 3);
    }

    /// Fox-calculus column of the relator at the abelianized value t.
    fn fox_row(relator: &GroupWord, n_gens: usize, t: &Scalar) -> Vec<Scalar> {
        let field = t.field();
        let mut row = vec![field.zero(); n_gens];
        let mut prefix_exp = 0i64;
        for l in relator.letters() {
            let tp = t.pow(prefix_exp);
            let contrib = if l.exp == 1 {
                tp
            } else {
                tp.mul(&t.pow(-1)).neg()
            };
            row[l.gen - 1] = row[l.gen - 1].add(&contrib);
            prefix_exp += i64::from(l.exp);
        }
        row
    }

    /// Independent oracle: the determinant of the knot, |Δ(-1)|, from the
    /// Fox Jacobian of the presentation with one relation and one generator
    /// column removed.
    fn knot_determinant(pres: &WirtingerPresentation) -> i64 {
        let field = Field::Rational;
        let n = pres.n_generators;
        if pres.relations.is_empty() {
            return 1;
        }
        let t = field.from_i64(-1);
        let rows: Vec<Vec<Scalar>> = pres
            .relations
            .iter()
            .take(n - 1)
            .map(|r| {
                let relator = r.rhs.concat(&r.lhs.invert());
                fox_row(&relator, n, &t)
            })
            .collect();
        let m = Matrix::from_fn(field, n - 1, n - 1, |i, j| rows[i][j].clone());
        let d = m.det();
        let abs = if d.is_negative() { d.neg() } else { d };
        for k in 0..1000 {
            if abs == field.from_i64(k) {
                return k;
            }
        }
        panic!("unexpectedly large determinant");
    }

    #[test]
    fn knot_determinants_match_tables() {
        let unknot = wirtinger(&parse_pd("").unwrap());
        assert_eq!(knot_determinant(&unknot), 1);
        assert_eq!(knot_determinant(&wirtinger(&trefoil())), 3);
        let fig8 = wirtinger(&parse_pd(builtin_pd("4_1").unwrap()).unwrap());
        assert_eq!(knot_determinant(&fig8), 5);
        let kink = wirtinger(&parse_pd("X[1,2,2,1]").unwrap());
        assert_eq!(knot_determinant(&kink), 1);
    }
}
