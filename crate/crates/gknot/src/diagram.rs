//! Generalized link diagrams as oriented planar combinatorial maps.
//!
//! A diagram is a collection of typed 4-valent crossings whose ports are
//! listed in counterclockwise order and wired together by directed arcs.
//! Every arc has exactly one tail (an `Out` port) and one head (an `In`
//! port), and each connected component of the resulting rotation system
//! must have genus zero.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// The five crossing types of a generalized diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CrossingType {
    RealPos,
    RealNeg,
    Virtual,
    Flat,
    Singular,
}

impl CrossingType {
    pub const ALL: [CrossingType; 5] = [
        CrossingType::RealPos,
        CrossingType::RealNeg,
        CrossingType::Virtual,
        CrossingType::Flat,
        CrossingType::Singular,
    ];

    /// RealPos and RealNeg are the classical crossings.
    pub fn is_real(self) -> bool {
        matches!(self, CrossingType::RealPos | CrossingType::RealNeg)
    }

    /// Text token used by all codec formats.
    pub fn token(self) -> &'static str {
        match self {
            CrossingType::RealPos => "R+",
            CrossingType::RealNeg => "R-",
            CrossingType::Virtual => "V",
            CrossingType::Flat => "F",
            CrossingType::Singular => "S",
        }
    }

    pub fn from_token(s: &str) -> Option<Self> {
        Some(match s {
            "R+" => CrossingType::RealPos,
            "R-" => CrossingType::RealNeg,
            "V" => CrossingType::Virtual,
            "F" => CrossingType::Flat,
            "S" => CrossingType::Singular,
            _ => return None,
        })
    }
}

impl fmt::Display for CrossingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// Direction of an arc at a port: `Out` at its tail, `In` at its head.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dir {
    In,
    Out,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Port {
    pub arc: String,
    pub dir: Dir,
}

impl Port {
    pub fn new(arc: impl Into<String>, dir: Dir) -> Self {
        Port { arc: arc.into(), dir }
    }
}

/// One typed crossing with its four ports in counterclockwise order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    pub id: String,
    pub ctype: CrossingType,
    pub ports: [Port; 4],
}

impl Crossing {
    /// The cyclic direction pattern must be a rotation of `[In, In, Out, Out]`.
    pub fn pattern_ok(&self) -> bool {
        (0..4).any(|r| {
            self.ports[r].dir == Dir::In
                && self.ports[(r + 1) % 4].dir == Dir::In
                && self.ports[(r + 2) % 4].dir == Dir::Out
                && self.ports[(r + 3) % 4].dir == Dir::Out
        })
    }
}

/// A generalized link diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    pub crossings: Vec<Crossing>,
    /// Crossing-free circle components.
    pub free_loops: usize,
    pub theory: Option<TheoryName>,
}

impl Diagram {
    pub fn new(crossings: Vec<Crossing>, free_loops: usize, theory: Option<TheoryName>) -> Self {
        Diagram { crossings, free_loops, theory }
    }

    pub fn empty() -> Self {
        Diagram { crossings: Vec::new(), free_loops: 0, theory: None }
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn crossing(&self, id: &str) -> Option<&Crossing> {
        self.crossings.iter().find(|c| c.id == id)
    }

    /// All arc names, sorted.
    pub fn arcs(&self) -> BTreeSet<String> {
        self.crossings
            .iter()
            .flat_map(|c| c.ports.iter().map(|p| p.arc.clone()))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// The offending crossing or arc.
    pub location: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.message, self.location)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        let mut first = true;
        for v in &self.violations {
            if !first {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum DiagramError {
    #[error("invalid diagram: {0}")]
    Invalid(ValidationReport),
    #[error("unknown crossing id {0}")]
    UnknownCrossing(String),
}

/// Location of one arc endpoint: crossing index and port index.
type Endpoint = (usize, usize);

/// Tail (`Out`) and head (`In`) endpoint of every arc. Only meaningful on
/// diagrams that passed the arc-pairing checks.
pub(crate) struct ArcMap {
    pub tail: BTreeMap<String, Endpoint>,
    pub head: BTreeMap<String, Endpoint>,
}

pub(crate) fn arc_map(d: &Diagram) -> Result<ArcMap, Vec<Violation>> {
    let mut tail: BTreeMap<String, Endpoint> = BTreeMap::new();
    let mut head: BTreeMap<String, Endpoint> = BTreeMap::new();
    let mut violations = Vec::new();
    for (ci, c) in d.crossings.iter().enumerate() {
        for (pi, p) in c.ports.iter().enumerate() {
            let (map, role) = match p.dir {
                Dir::Out => (&mut tail, "tail"),
                Dir::In => (&mut head, "head"),
            };
            if map.insert(p.arc.clone(), (ci, pi)).is_some() {
                violations.push(Violation {
                    location: p.arc.clone(),
                    message: format!("arc has two {role}s:"),
                });
            }
        }
    }
    for arc in tail.keys() {
        if !head.contains_key(arc) {
            violations.push(Violation {
                location: arc.clone(),
                message: "arc has no head:".into(),
            });
        }
    }
    for arc in head.keys() {
        if !tail.contains_key(arc) {
            violations.push(Violation {
                location: arc.clone(),
                message: "arc has no tail:".into(),
            });
        }
    }
    if violations.is_empty() {
        Ok(ArcMap { tail, head })
    } else {
        Err(violations)
    }
}

/// Checks every diagram invariant: the port pattern at each crossing, the
/// arc pairing, genus zero per connected component, and the theory tag.
pub fn validate(d: &Diagram) -> ValidationReport {
    let mut violations = Vec::new();

    let mut seen_ids = BTreeSet::new();
    for c in &d.crossings {
        if !seen_ids.insert(c.id.clone()) {
            violations.push(Violation {
                location: c.id.clone(),
                message: "duplicate crossing id".into(),
            });
        }
        if !c.pattern_ok() {
            violations.push(Violation {
                location: c.id.clone(),
                message: "bad port pattern".into(),
            });
        }
    }

    let arcs = match arc_map(d) {
        Ok(m) => Some(m),
        Err(mut vs) => {
            violations.append(&mut vs);
            None
        }
    };

    // Genus is only computable once the map structure is sound.
    if violations.is_empty() {
        if let Some(arcs) = arcs {
            check_genus(d, &arcs, &mut violations);
        }
    }

    if let Some(theory) = d.theory {
        let family = TheoryFamily::of(theory);
        for c in &d.crossings {
            if !family.allowed_crossings.contains(&c.ctype) {
                violations.push(Violation {
                    location: c.id.clone(),
                    message: format!(
                        "crossing type {} not allowed in theory {}:",
                        c.ctype,
                        theory.as_str()
                    ),
                });
            }
        }
    }

    ValidationReport { violations }
}

/// Euler check V - E + F = 2 on every connected component of the shadow.
/// Faces are the orbits of the dart permutation `d -> ccw successor of
/// twin(d)` induced by the rotation system.
fn check_genus(d: &Diagram, arcs: &ArcMap, violations: &mut Vec<Violation>) {
    let n = d.crossings.len();
    if n == 0 {
        return;
    }

    // Union crossings connected by an arc.
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(comp: &mut Vec<usize>, x: usize) -> usize {
        if comp[x] != x {
            let r = find(comp, comp[x]);
            comp[x] = r;
        }
        comp[x]
    }
    for (arc, &(tc, _)) in &arcs.tail {
        let (hc, _) = arcs.head[arc];
        let (a, b) = (find(&mut comp, tc), find(&mut comp, hc));
        comp[a] = b;
    }

    // twin: dart at the tail of an arc <-> dart at its head.
    let dart = |(ci, pi): Endpoint| ci * 4 + pi;
    let mut twin = vec![usize::MAX; 4 * n];
    for (arc, &t) in &arcs.tail {
        let h = arcs.head[arc];
        twin[dart(t)] = dart(h);
        twin[dart(h)] = dart(t);
    }

    let mut face_of = vec![usize::MAX; 4 * n];
    let mut faces_in_comp: BTreeMap<usize, usize> = BTreeMap::new();
    let mut face_id = 0;
    for start in 0..4 * n {
        if face_of[start] != usize::MAX {
            continue;
        }
        let mut cur = start;
        loop {
            face_of[cur] = face_id;
            let t = twin[cur];
            cur = (t / 4) * 4 + (t % 4 + 1) % 4;
            if cur == start {
                break;
            }
        }
        *faces_in_comp.entry(find(&mut comp, start / 4)).or_insert(0) += 1;
        face_id += 1;
    }

    let mut verts: BTreeMap<usize, usize> = BTreeMap::new();
    for ci in 0..n {
        *verts.entry(find(&mut comp, ci)).or_insert(0) += 1;
    }
    let mut edges: BTreeMap<usize, usize> = BTreeMap::new();
    for &(tc, _) in arcs.tail.values() {
        *edges.entry(find(&mut comp, tc)).or_insert(0) += 1;
    }

    for (&root, &v) in &verts {
        let e = edges.get(&root).copied().unwrap_or(0);
        let f = faces_in_comp.get(&root).copied().unwrap_or(0);
        if v + f != e + 2 {
            violations.push(Violation {
                location: d.crossings[root].id.clone(),
                message: format!(
                    "nonzero genus on component (V={v}, E={e}, F={f}) at crossing"
                ),
            });
        }
    }
}

fn require_valid(d: &Diagram) -> Result<(), DiagramError> {
    let report = validate(d);
    if report.is_valid() {
        Ok(())
    } else {
        Err(DiagramError::Invalid(report))
    }
}

/// Number of closed curves of the diagram: cycles of arcs under
/// through-pairing (each `In` port continues at the `Out` port two steps
/// away cyclically), plus the free loops.
pub fn curve_components(d: &Diagram) -> Result<usize, DiagramError> {
    require_valid(d)?;
    let arcs = arc_map(d).expect("validated");
    let mut seen: BTreeSet<&str> = BTreeSet::new();
    let mut count = 0;
    for arc in arcs.tail.keys() {
        if seen.contains(arc.as_str()) {
            continue;
        }
        let mut cur = arc.as_str();
        while seen.insert(cur) {
            let (ci, pi) = arcs.head[cur];
            cur = &d.crossings[ci].ports[(pi + 2) % 4].arc;
        }
        count += 1;
    }
    Ok(count + d.free_loops)
}

/// Number of connected components of the underlying shadow: crossings
/// joined whenever they share an arc, plus one component per free loop.
/// Two curves that cross each other form a single component.
pub fn shadow_components(d: &Diagram) -> usize {
    let n = d.crossings.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    let mut owner: BTreeMap<&str, usize> = BTreeMap::new();
    for (i, c) in d.crossings.iter().enumerate() {
        for p in &c.ports {
            match owner.get(p.arc.as_str()) {
                Some(&j) => {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
                None => {
                    owner.insert(&p.arc, i);
                }
            }
        }
    }
    let roots: BTreeSet<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
    roots.len() + d.free_loops
}

/// Replaces every non-classical crossing type by RealPos, leaving ports,
/// arcs and free loops untouched.
pub fn classicalize(d: &Diagram) -> Diagram {
    let crossings = d
        .crossings
        .iter()
        .map(|c| {
            let ctype = if c.ctype.is_real() { c.ctype } else { CrossingType::RealPos };
            Crossing { id: c.id.clone(), ctype, ports: c.ports.clone() }
        })
        .collect();
    Diagram { crossings, free_loops: d.free_loops, theory: d.theory }
}

/// True iff every crossing type of `d` is allowed by the theory.
pub fn theory_check(d: &Diagram, t: &TheoryFamily) -> bool {
    d.crossings.iter().all(|c| t.allowed_crossings.contains(&c.ctype))
}

/// Reidemeister-type moves, including the generalized GR moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[allow(clippy::upper_case_acronyms)]
pub enum MoveType {
    R1, R2, R3,
    V1, V2, V3, V4,
    F1, F2, F3, F4,
    W1, W2,
    S1, S2, S3,
    GR1, GR2, GR3, GR4,
}

/// The nine diagram families: allowed crossings and moves per family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoryName {
    Classical,
    Virtual,
    FlatVirtual,
    Welded,
    Unrestricted,
    Singular,
    VirtualSingular,
    Doodle,
    VirtualDoodle,
}

impl TheoryName {
    pub const ALL: [TheoryName; 9] = [
        TheoryName::Classical,
        TheoryName::Virtual,
        TheoryName::FlatVirtual,
        TheoryName::Welded,
        TheoryName::Unrestricted,
        TheoryName::Singular,
        TheoryName::VirtualSingular,
        TheoryName::Doodle,
        TheoryName::VirtualDoodle,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoryName::Classical => "classical",
            TheoryName::Virtual => "virtual",
            TheoryName::FlatVirtual => "flat_virtual",
            TheoryName::Welded => "welded",
            TheoryName::Unrestricted => "unrestricted",
            TheoryName::Singular => "singular",
            TheoryName::VirtualSingular => "virtual_singular",
            TheoryName::Doodle => "doodle",
            TheoryName::VirtualDoodle => "virtual_doodle",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        TheoryName::ALL.into_iter().find(|t| t.as_str() == s)
    }
}

impl fmt::Display for TheoryName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoryFamily {
    pub name: TheoryName,
    pub allowed_crossings: BTreeSet<CrossingType>,
    pub allowed_moves: BTreeSet<MoveType>,
    /// Crossing types that admit the GR1-GR4 moves in this theory. Where
    /// the table leaves this open (flat virtual, singular, doodles) the
    /// default is empty and can be overridden.
    pub gr_compatible: BTreeSet<CrossingType>,
}

impl TheoryFamily {
    pub fn of(name: TheoryName) -> Self {
        use CrossingType::*;
        use MoveType::*;
        let (crossings, moves, gr): (&[CrossingType], &[MoveType], &[CrossingType]) = match name {
            TheoryName::Classical => {
                (&[RealPos, RealNeg], &[R1, R2, R3], &[RealPos, RealNeg])
            }
            TheoryName::Virtual => {
                (&[RealPos, RealNeg, Virtual], &[R1, R2, R3, V1, V2, V3, V4], &[Virtual])
            }
            TheoryName::FlatVirtual => {
                (&[Flat, Virtual], &[F1, F2, F3, F4, V1, V2, V3], &[])
            }
            TheoryName::Welded => {
                (&[RealPos, RealNeg, Virtual], &[R1, R2, R3, V1, V2, V3, V4, W1], &[Virtual])
            }
            TheoryName::Unrestricted => (
                &[RealPos, RealNeg, Virtual],
                &[R1, R2, R3, V1, V2, V3, V4, W1, W2],
                &[Virtual],
            ),
            TheoryName::Singular => {
                (&[RealPos, RealNeg, Singular], &[R1, R2, R3, S1, S2], &[])
            }
            TheoryName::VirtualSingular => (
                &[RealPos, RealNeg, Virtual, Singular],
                &[R1, R2, R3, V1, V2, V3, V4, S1, S2, S3],
                &[Virtual],
            ),
            TheoryName::Doodle => (&[Flat], &[F1, F2], &[]),
            TheoryName::VirtualDoodle => (&[Flat, Virtual], &[F1, F2, F4], &[]),
        };
        TheoryFamily {
            name,
            allowed_crossings: crossings.iter().copied().collect(),
            allowed_moves: moves.iter().copied().collect(),
            gr_compatible: gr.iter().copied().collect(),
        }
    }

    /// Overrides the GR-compatible set. Panics if the set is not a subset
    /// of the allowed crossings.
    pub fn with_gr_compatible(mut self, gr: BTreeSet<CrossingType>) -> Self {
        assert!(
            gr.is_subset(&self.allowed_crossings),
            "gr_compatible must be a subset of allowed_crossings"
        );
        self.gr_compatible = gr;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The positive kink: one crossing, two arcs.
    pub(crate) fn kink() -> Diagram {
        Diagram::new(
            vec![Crossing {
                id: "c1".into(),
                ctype: CrossingType::RealPos,
                ports: [
                    Port::new("a", Dir::In),
                    Port::new("b", Dir::In),
                    Port::new("b", Dir::Out),
                    Port::new("a", Dir::Out),
                ],
            }],
            0,
            None,
        )
    }

    #[test]
    fn kink_is_valid() {
        let report = validate(&kink());
        assert!(report.is_valid(), "{report}");
    }

    #[test]
    fn bad_port_pattern_rejected() {
        let mut d = kink();
        // [In, Out, In, Out] is not a rotation of [In, In, Out, Out].
        d.crossings[0].ports = [
            Port::new("a", Dir::In),
            Port::new("b", Dir::Out),
            Port::new("b", Dir::In),
            Port::new("a", Dir::Out),
        ];
        let report = validate(&d);
        assert!(report.violations.iter().any(|v| v.message == "bad port pattern"));
    }

    #[test]
    fn double_tail_rejected() {
        let mut d = kink();
        d.crossings.push(Crossing {
            id: "c2".into(),
            ctype: CrossingType::RealPos,
            ports: [
                Port::new("x", Dir::In),
                Port::new("y", Dir::In),
                Port::new("y", Dir::Out),
                Port::new("a", Dir::Out),
            ],
        });
        let report = validate(&d);
        assert!(report
            .violations
            .iter()
            .any(|v| v.location == "a" && v.message.contains("two tails")));
    }

    #[test]
    fn kink_curve_components() {
        assert_eq!(curve_components(&kink()).unwrap(), 1);
    }

    #[test]
    fn free_loops_counted() {
        let d = Diagram::new(vec![], 3, None);
        assert_eq!(curve_components(&d).unwrap(), 3);
    }

    #[test]
    fn classicalize_virtual_kink() {
        let mut d = kink();
        d.crossings[0].ctype = CrossingType::Virtual;
        let c = classicalize(&d);
        assert_eq!(c.crossings[0].ctype, CrossingType::RealPos);
        assert_eq!(c.crossings[0].ports, d.crossings[0].ports);
        // idempotent
        assert_eq!(classicalize(&c), c);
    }

    #[test]
    fn theory_check_table_rows() {
        let vs = TheoryFamily::of(TheoryName::VirtualSingular);
        let mut d = kink();
        d.crossings[0].ctype = CrossingType::Singular;
        assert!(theory_check(&d, &vs));

        let classical = TheoryFamily::of(TheoryName::Classical);
        let mut flat = kink();
        flat.crossings[0].ctype = CrossingType::Flat;
        assert!(!theory_check(&flat, &classical));

        assert!(theory_check(&Diagram::empty(), &classical));
    }

    #[test]
    fn table_one_virtual_singular_row() {
        use CrossingType::*;
        use MoveType::*;
        let t = TheoryFamily::of(TheoryName::VirtualSingular);
        let crossings: BTreeSet<_> = [RealPos, RealNeg, Virtual, Singular].into();
        let moves: BTreeSet<_> = [R1, R2, R3, V1, V2, V3, V4, S1, S2, S3].into();
        assert_eq!(t.allowed_crossings, crossings);
        assert_eq!(t.allowed_moves, moves);
    }

    #[test]
    fn gr_compatible_is_subset_everywhere() {
        for name in TheoryName::ALL {
            let t = TheoryFamily::of(name);
            assert!(t.gr_compatible.is_subset(&t.allowed_crossings), "{name}");
        }
    }
}
