//! The reducible-configuration catalog, as data.

use std::fmt;
use std::str::FromStr;

use discharging::Ruleset;

use crate::cost::{CostBound, CostContext, DegSet, Gap};

pub const CATALOG_VERSION: u32 = 1;

/// A path vertex of exact degree `deg`.  When `offs` is nonempty it lists
/// the allowed degrees of the off-path neighbors, matched as a multiset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub deg: usize,
    pub offs: Vec<DegSet>,
}

impl Token {
    pub fn plain(deg: usize) -> Token {
        Token { deg, offs: Vec::new() }
    }

    pub fn with_offs(deg: usize, offs: &[DegSet]) -> Token {
        Token { deg, offs: offs.to_vec() }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.deg)?;
        if !self.offs.is_empty() {
            let s: Vec<String> = self.offs.iter().map(|d| d.to_string()).collect();
            write!(f, ":{}", s.join(","))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequencePattern {
    pub tokens: Vec<Token>,
}

impl SequencePattern {
    pub fn degrees(ds: &[usize]) -> SequencePattern {
        SequencePattern { tokens: ds.iter().map(|&d| Token::plain(d)).collect() }
    }
}

impl fmt::Display for SequencePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.tokens.iter().map(|t| t.to_string()).collect();
        f.write_str(&s.join(" "))
    }
}

/// Parses tokens like `2 2 3:23 3:1,3`; `*` stands for any degree.
impl FromStr for SequencePattern {
    type Err = String;
    fn from_str(s: &str) -> Result<SequencePattern, String> {
        let mut tokens = Vec::new();
        for t in s.split_whitespace() {
            let (d, offs) = match t.split_once(':') {
                Some((d, o)) => (d, Some(o)),
                None => (t, None),
            };
            let deg: usize = d.parse().map_err(|_| format!("bad degree in {t:?}"))?;
            if !(1..=3).contains(&deg) {
                return Err(format!("degree out of range in {t:?}"));
            }
            let mut sets = Vec::new();
            for o in offs.into_iter().flat_map(|o| o.split(',')) {
                let mut m = 0u8;
                for c in o.chars() {
                    m |= match c {
                        '1'..='3' => 1 << (c as u8 - b'0'),
                        '*' => DegSet::ANY.0,
                        _ => return Err(format!("bad degree set in {t:?}")),
                    };
                }
                sets.push(DegSet(m));
            }
            tokens.push(Token { deg, offs: sets });
        }
        if tokens.is_empty() {
            return Err("empty pattern".into());
        }
        Ok(SequencePattern { tokens })
    }
}

/// Face-context rules.  Bad-face positions use the labeling v1..v8 as
/// indices 0..7, with v3, v4 the contributing vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FaceRule {
    /// The third neighbors of both contributing vertices are 3-vertices that
    /// each have a 2-neighbor.
    ContributingNeighbors,
    /// Two bad faces with the same v3.
    SharedV3,
    /// Two bad faces with the same v4.
    SharedV4,
    /// A non-bad face labeled f[0..len] with the given degrees, where each
    /// listed consecutive pair is the contributing pair of a distinct bad
    /// face.  With `oriented`, the first pair is (v4, v3) of its bad face.
    /// S is the closed neighborhood of the face dominators plus `bad_dom`
    /// taken on every matched bad face.
    Labeled {
        degrees: Vec<usize>,
        pairs: Vec<(usize, usize)>,
        oriented: bool,
        face_dom: Vec<usize>,
        bad_dom: [usize; 2],
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pattern {
    /// S is the listed path positions plus all off-path neighbors of the
    /// positions in `s_offs`; `dom` (path positions) dominates S.
    Sequence { pattern: SequencePattern, s_path: Vec<usize>, s_offs: Vec<usize>, dom: Vec<usize> },
    Face(FaceRule),
}

/// One way the degree profile of S can look, with its boundary cost bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WsCase {
    /// Number of S-vertices of degree 0, 1, 2, 3.
    pub ws: [i64; 4],
    pub cost: CostBound,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigEntry {
    pub name: String,
    pub pattern: Pattern,
    pub gamma_s: usize,
    pub cases: Vec<WsCase>,
    pub provenance: String,
}

impl ConfigEntry {
    /// Every (w_S counts, cost gap vector) pair the entry must survive.
    pub fn forms(&self) -> Vec<([i64; 4], Gap)> {
        self.cases.iter().flat_map(|c| c.cost.gaps().into_iter().map(move |g| (c.ws, g))).collect()
    }

    pub fn needs_faces(&self) -> bool {
        matches!(self.pattern, Pattern::Face(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Girth8Thm1,
    Girth9Thm1,
    Girth9Thm2,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Girth9Thm1, Variant::Girth8Thm1, Variant::Girth9Thm2];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Girth8Thm1 => "girth8-thm1",
            Variant::Girth9Thm1 => "girth9-thm1",
            Variant::Girth9Thm2 => "girth9-thm2",
        }
    }

    pub fn ctx(self) -> CostContext {
        match self {
            Variant::Girth9Thm2 => CostContext::thm2(),
            _ => CostContext::thm1(),
        }
    }

    pub fn min_girth(self) -> usize {
        match self {
            Variant::Girth8Thm1 => 8,
            _ => 9,
        }
    }

    pub fn ruleset(self) -> Ruleset {
        match self {
            Variant::Girth8Thm1 => Ruleset::Girth8,
            _ => Ruleset::Girth9,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> Result<Variant, String> {
        Variant::ALL.into_iter().find(|v| v.name() == s).ok_or_else(|| format!("unknown variant {s:?}"))
    }
}

const ANY: DegSet = DegSet::ANY;
const D1: DegSet = DegSet::D1;
const D2: DegSet = DegSet::D2;
const D3: DegSet = DegSet::D3;
const D23: DegSet = DegSet::D23;

fn seq(
    name: &str,
    tokens: Vec<Token>,
    s_path: &[usize],
    s_offs: &[usize],
    dom: &[usize],
    cases: Vec<([i64; 4], CostBound)>,
    provenance: &str,
) -> ConfigEntry {
    ConfigEntry {
        name: name.into(),
        pattern: Pattern::Sequence {
            pattern: SequencePattern { tokens },
            s_path: s_path.to_vec(),
            s_offs: s_offs.to_vec(),
            dom: dom.to_vec(),
        },
        gamma_s: dom.len(),
        cases: cases.into_iter().map(|(ws, cost)| WsCase { ws, cost }).collect(),
        provenance: provenance.into(),
    }
}

fn face(name: &str, rule: FaceRule, gamma_s: usize, ws: [i64; 4], cost: CostBound, provenance: &str) -> ConfigEntry {
    ConfigEntry {
        name: name.into(),
        pattern: Pattern::Face(rule),
        gamma_s,
        cases: vec![WsCase { ws, cost }],
        provenance: provenance.into(),
    }
}

fn p(ds: &[usize]) -> Vec<Token> {
    ds.iter().map(|&d| Token::plain(d)).collect()
}

fn t(d: usize, offs: &[DegSet]) -> Token {
    Token::with_offs(d, offs)
}

fn limited(slots: &[DegSet], max_deg1: Option<usize>, max_deg2: Option<usize>) -> CostBound {
    CostBound::Slots { slots: slots.to_vec(), max_deg1, max_deg2 }
}

/// Sequences shared by both variants under the first weights and kept under the second.
fn short_sequences() -> Vec<ConfigEntry> {
    vec![
        seq("(1,2)", p(&[1, 2]), &[0, 1], &[], &[1], vec![([0, 1, 1, 0], CostBound::slots(&[ANY]))], "leaf on a 2-vertex"),
        seq(
            "(1,3,1)",
            p(&[1, 3, 1]),
            &[0, 1, 2],
            &[],
            &[1],
            vec![([0, 2, 0, 1], CostBound::slots(&[ANY]))],
            "3-vertex with two leaves",
        ),
        seq(
            "(1,3,2)",
            p(&[1, 3, 2]),
            &[0, 1, 2],
            &[],
            &[1],
            vec![([0, 1, 1, 1], CostBound::slots(&[ANY, ANY]))],
            "leaf and 2-vertex on a common 3-vertex",
        ),
        seq(
            "(1,3,3,1)",
            vec![Token::plain(1), t(3, &[D3]), t(3, &[D3]), Token::plain(1)],
            &[0, 1, 2, 3],
            &[1, 2],
            &[1, 2],
            vec![(
                [0, 2, 0, 4],
                CostBound::Sum(vec![limited(&[ANY, ANY], Some(1), None), limited(&[ANY, ANY], Some(1), None)]),
            )],
            "adjacent 3-vertices each carrying a leaf",
        ),
        seq(
            "(2,2,2)",
            p(&[2, 2, 2]),
            &[0, 1, 2],
            &[],
            &[1],
            vec![([0, 0, 3, 0], CostBound::slots(&[ANY, ANY]))],
            "three consecutive 2-vertices",
        ),
    ]
}

fn girth9_thm1() -> Vec<ConfigEntry> {
    let mut v = short_sequences();
    v.push(seq(
        "leaf-star",
        vec![Token::plain(1), t(3, &[D3]), Token::plain(3)],
        &[0, 1, 2],
        &[1],
        &[1],
        vec![([0, 1, 0, 3], CostBound::slots(&[D23; 4]))],
        "leaf on a 3-vertex whose other neighbors are 3-vertices",
    ));
    v.push(seq(
        "(2,3,2)",
        vec![Token::plain(2), t(3, &[D23]), Token::plain(2)],
        &[0, 1, 2],
        &[1],
        &[1],
        vec![([0, 0, 2, 2], CostBound::slots(&[D23; 4])), ([0, 0, 3, 1], CostBound::slots(&[D23; 3]))],
        "3-vertex with two 2-neighbors",
    ));
    v.push(seq(
        "(2,2,3,3,2,2)",
        p(&[2, 2, 3, 3, 2, 2]),
        &[0, 1, 2, 3, 4, 5],
        &[],
        &[1, 4],
        vec![([0, 0, 4, 2], CostBound::slots(&[D23; 4]))],
        "six-vertex path with four 2-vertices",
    ));
    v
}

fn labeled(degrees: &[usize], pairs: &[(usize, usize)], oriented: bool, face_dom: &[usize], bad_dom: [usize; 2]) -> FaceRule {
    FaceRule::Labeled {
        degrees: degrees.to_vec(),
        pairs: pairs.to_vec(),
        oriented,
        face_dom: face_dom.to_vec(),
        bad_dom,
    }
}

fn girth8_faces() -> Vec<ConfigEntry> {
    let e = |k, md: Option<usize>, m22: Option<usize>, tr| CostBound::Edges { k, max_doubles: md, max_double22: m22, triples: tr };
    vec![
        face(
            "contributing-neighbors",
            FaceRule::ContributingNeighbors,
            4,
            [0, 0, 5, 9],
            e(9, Some(1), None, false),
            "both outer neighbors of the contributing pair see a 2-vertex",
        ),
        face(
            "shared-v3",
            FaceRule::SharedV3,
            4,
            [0, 0, 4, 10],
            e(8, Some(1), None, false),
            "two bad 8-faces sharing the first contributing vertex",
        ),
        face(
            "shared-v4",
            FaceRule::SharedV4,
            4,
            [0, 0, 5, 8],
            e(6, Some(0), None, false),
            "two bad 8-faces sharing the second contributing vertex",
        ),
        face(
            "good8-twos-adjacent-a",
            labeled(&[3, 3, 3, 3, 2, 2, 3, 3], &[(0, 1)], true, &[1, 3, 6], [7, 5]),
            5,
            [0, 0, 5, 13],
            e(11, None, Some(2), false),
            "contributing 8-face with two 2-vertices, near placement",
        ),
        face(
            "good8-twos-adjacent-b",
            labeled(&[3, 3, 3, 3, 3, 2, 2, 3], &[(0, 1)], true, &[1, 4, 7], [7, 5]),
            5,
            [0, 0, 5, 13],
            e(11, None, Some(2), false),
            "contributing 8-face with two 2-vertices, far placement",
        ),
        face(
            "good8-one-two",
            labeled(&[2, 3, 3, 3, 3, 3, 3, 3], &[(2, 3), (5, 6)], false, &[1, 4, 7], [0, 5]),
            7,
            [0, 0, 7, 18],
            CostBound::edges(14),
            "8-face with one 2-vertex and two bad neighbors",
        ),
        face(
            "good8-all-three",
            labeled(&[3; 8], &[(7, 0), (2, 3), (4, 5)], false, &[1, 3, 6], [0, 5]),
            9,
            [0, 0, 9, 22],
            CostBound::edges(16),
            "8-face of 3-vertices with three bad neighbors",
        ),
        face(
            "good9-two-twos",
            labeled(&[3, 3, 3, 3, 3, 3, 2, 2, 3], &[(0, 1), (3, 4)], false, &[2, 5, 8], [0, 5]),
            7,
            [0, 0, 8, 18],
            CostBound::edges(14),
            "9-face with two 2-vertices and two bad neighbors",
        ),
    ]
}

fn girth9_thm2() -> Vec<ConfigEntry> {
    let mut v = short_sequences();
    let side = || limited(&[D23, D23], None, Some(1));
    v.extend([
        seq(
            "leaf-star-t2",
            vec![Token::plain(1), t(3, &[D3]), Token::plain(3)],
            &[0, 1, 2],
            &[1],
            &[1],
            vec![([0, 1, 0, 3], CostBound::Sum(vec![side(), side()]))],
            "leaf on a 3-vertex whose other neighbors are 3-vertices",
        ),
        seq(
            "(2,2,3,3_13)",
            vec![t(2, &[D3]), Token::plain(2), t(3, &[D23]), t(3, &[D1, D3])],
            &[0, 1, 2, 3],
            &[3],
            &[1, 3],
            vec![([0, 1, 2, 3], CostBound::slots(&[D3, D23, D23, D23]))],
            "two 2-vertices leading to a 3-vertex carrying a leaf",
        ),
        seq(
            "(3_22,3_13)",
            vec![t(3, &[D2, D2]), t(3, &[D1, D3])],
            &[0, 1],
            &[0, 1],
            &[0, 1],
            vec![([0, 1, 2, 3], CostBound::slots(&[D3, D3, D23, D23]))],
            "3-vertex with two 2-neighbors next to a 3-vertex carrying a leaf",
        ),
        seq(
            "claw-of-twos",
            vec![Token::plain(2), t(3, &[D2]), Token::plain(2)],
            &[0, 1, 2],
            &[1],
            &[1],
            vec![([0, 0, 3, 1], CostBound::slots(&[D23; 3]))],
            "3-vertex whose neighbors are all 2-vertices",
        ),
        seq(
            "(3_23,2,2,3_23)",
            vec![t(3, &[D2, D3]), Token::plain(2), Token::plain(2), t(3, &[D2, D3])],
            &[0, 1, 2, 3],
            &[0, 3],
            &[0, 3],
            vec![([0, 0, 4, 4], CostBound::slots(&[D23; 6]))],
            "two adjacent 2-vertices between 3-vertices that each see a 2-vertex",
        ),
        seq(
            "(2,2,3,2,2,3)",
            vec![t(2, &[D3]), Token::plain(2), t(3, &[D3]), Token::plain(2), Token::plain(2), t(3, &[D23, D3])],
            &[0, 1, 2, 3, 4, 5],
            &[],
            &[1, 4],
            vec![([0, 0, 4, 2], CostBound::slots(&[D3, D3, D23, D3]))],
            "two pairs of 2-vertices separated by single 3-vertices",
        ),
        seq(
            "(3_22,3_22)",
            vec![t(3, &[D2, D2]), t(3, &[D2, D2])],
            &[0, 1],
            &[0, 1],
            &[0, 1],
            vec![([0, 0, 4, 2], limited(&[D23; 4], None, Some(2)))],
            "adjacent 3-vertices each with two 2-neighbors",
        ),
        seq(
            "(2,2,3,2,3,2)",
            vec![t(2, &[D3]), Token::plain(2), t(3, &[D3]), Token::plain(2), t(3, &[D3]), Token::plain(2)],
            &[0, 1, 2, 3, 4, 5],
            &[],
            &[1, 4],
            vec![([0, 0, 4, 2], CostBound::slots(&[D3, D3, D3, D23]))],
            "pair of 2-vertices followed by alternating 3- and 2-vertices",
        ),
        seq(
            "(2,2,3,3,2,2)-t2",
            vec![t(2, &[D3]), Token::plain(2), Token::plain(3), Token::plain(3), Token::plain(2), t(2, &[D3])],
            &[0, 1, 2, 3, 4, 5],
            &[],
            &[1, 4],
            vec![([0, 0, 4, 2], CostBound::slots(&[D3, D23, D23, D3]))],
            "six-vertex path with four 2-vertices",
        ),
        seq(
            "(3,2,3,2,3)",
            vec![Token::plain(3), Token::plain(2), t(3, &[D3]), Token::plain(2), Token::plain(3)],
            &[1, 2, 3],
            &[2],
            &[2],
            vec![([0, 0, 2, 2], CostBound::Sum(vec![CostBound::slots(&[D3, D3]), CostBound::slots(&[D23, D3])]))],
            "3-vertex with two 2-neighbors that lead to 3-vertices",
        ),
    ]);
    v
}

pub fn catalog(variant: Variant) -> Vec<ConfigEntry> {
    match variant {
        Variant::Girth9Thm1 => girth9_thm1(),
        Variant::Girth8Thm1 => {
            let mut v = girth9_thm1();
            v.extend(girth8_faces());
            v
        }
        Variant::Girth9Thm2 => girth9_thm2(),
    }
}

fn cost_text(c: &CostBound) -> String {
    let list = |s: &[DegSet]| s.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ");
    match c {
        CostBound::Slots { slots, max_deg1, max_deg2 } => {
            let mut out = format!("slots[{}]", list(slots));
            if let Some(m) = max_deg1 {
                out += &format!(" max1={m}");
            }
            if let Some(m) = max_deg2 {
                out += &format!(" max2={m}");
            }
            out
        }
        CostBound::Sum(parts) => parts.iter().map(cost_text).collect::<Vec<_>>().join(" + "),
        CostBound::Edges { k, max_doubles, max_double22, triples } => {
            let mut out = format!("edges k={k}");
            if let Some(m) = max_doubles {
                out += &format!(" doubles<={m}");
            }
            if let Some(m) = max_double22 {
                out += &format!(" doubles22<={m}");
            }
            if !triples {
                out += " no-triples";
            }
            out
        }
    }
}

fn rule_text(p: &Pattern) -> Vec<String> {
    let idx = |v: &[usize]| v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",");
    match p {
        Pattern::Sequence { pattern, s_path, s_offs, dom } => vec![
            format!("pattern seq {pattern}"),
            format!("s path[{}] offs[{}]", idx(s_path), idx(s_offs)),
            format!("dom path[{}]", idx(dom)),
        ],
        Pattern::Face(FaceRule::ContributingNeighbors) => {
            vec!["pattern face contributing-neighbors".into(), "s N[v1,w3,w4]+{v5,v6,v7}".into()]
        }
        Pattern::Face(FaceRule::SharedV3) => vec!["pattern face shared-v3".into()],
        Pattern::Face(FaceRule::SharedV4) => vec!["pattern face shared-v4".into()],
        Pattern::Face(FaceRule::Labeled { degrees, pairs, oriented, face_dom, bad_dom }) => {
            let pr: Vec<String> = pairs.iter().map(|(a, b)| format!("{a}-{b}")).collect();
            vec![
                format!("pattern face degrees[{}] pairs[{}]{}", idx(degrees), pr.join(","), if *oriented { " oriented" } else { "" }),
                format!("dom face[{}] bad[{}]", idx(face_dom), idx(bad_dom)),
            ]
        }
    }
}

/// Versioned, line-oriented listing of a variant's catalog.
pub fn catalog_text(variant: Variant) -> String {
    let mut out = format!("# catalog v{CATALOG_VERSION} {variant}\n");
    for e in catalog(variant) {
        out += &format!("entry {}\n", e.name);
        out += &format!("  about {}\n", e.provenance);
        for l in rule_text(&e.pattern) {
            out += &format!("  {l}\n");
        }
        out += &format!("  gamma {}\n", e.gamma_s);
        for c in &e.cases {
            let ws: Vec<String> = c.ws.iter().map(|x| x.to_string()).collect();
            let gaps: Vec<String> = c.cost.gaps().iter().map(|g| g.to_string()).collect();
            out += &format!("  case ws[{}] cost {}\n", ws.join(" "), cost_text(&c.cost));
            out += &format!("    gaps {}\n", gaps.join(" "));
        }
    }
    out
}
