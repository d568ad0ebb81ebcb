//! Circuits in the integer lattice and their Jordan decomposition.
//!
//! With the Euclidean metric every lattice point has radius 1, so continuous
//! paths in Z² are 4-adjacent walks. A circuit is *simple* when it is injective
//! and any two of its points that are diagonal neighbours sit two positions
//! apart (cyclically) with the point between them adjacent to both. Simple
//! circuits without unit squares split the rest of the lattice into one finite
//! and one infinite 4-connected region, and casting axis rays from either region
//! (then filling in corner points) recovers the whole circuit.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridPoint {
    pub x: i64,
    pub y: i64,
}

impl GridPoint {
    pub const fn new(x: i64, y: i64) -> Self {
        GridPoint { x, y }
    }

    pub fn offset(self, dx: i64, dy: i64) -> Self {
        GridPoint::new(self.x + dx, self.y + dy)
    }

    pub fn is_axis_neighbor(self, other: GridPoint) -> bool {
        (self.x - other.x).abs() + (self.y - other.y).abs() == 1
    }

    pub fn is_diagonal_neighbor(self, other: GridPoint) -> bool {
        (self.x - other.x).abs() == 1 && (self.y - other.y).abs() == 1
    }
}

impl From<(i64, i64)> for GridPoint {
    fn from((x, y): (i64, i64)) -> Self {
        GridPoint::new(x, y)
    }
}

impl Serialize for GridPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.x, self.y].serialize(s)
    }
}

impl<'de> Deserialize<'de> for GridPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [x, y] = <[i64; 2]>::deserialize(d)?;
        Ok(GridPoint::new(x, y))
    }
}

const AXIS: [(i64, i64); 4] = [(1, 0), (-1, 0), (0, -1), (0, 1)];
const DIAGONAL: [(i64, i64); 4] = [(-1, -1), (-1, 1), (1, 1), (1, -1)];

/// The four axis neighbours `dB1(p)`.
pub fn db1(p: GridPoint) -> [GridPoint; 4] {
    AXIS.map(|(dx, dy)| p.offset(dx, dy))
}

/// The four diagonal neighbours `dB2(p)`.
pub fn db2(p: GridPoint) -> [GridPoint; 4] {
    DIAGONAL.map(|(dx, dy)| p.offset(dx, dy))
}

/// A closed 4-adjacent walk `x_0, ..., x_n` with `x_0 = x_n` and `n >= 4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridCircuit {
    vertices: Vec<GridPoint>,
}

impl GridCircuit {
    pub fn new(vertices: Vec<GridPoint>) -> Result<Self> {
        if vertices.len() < 5 {
            return Err(Error::NotACircuit(format!(
                "need at least 5 entries (n >= 4 with x_0 = x_n), got {}",
                vertices.len()
            )));
        }
        if vertices[0] != *vertices.last().unwrap() {
            return Err(Error::NotACircuit(format!(
                "first point {:?} differs from last point {:?}",
                vertices[0],
                vertices.last().unwrap()
            )));
        }
        for (i, w) in vertices.windows(2).enumerate() {
            if !w[0].is_axis_neighbor(w[1]) {
                return Err(Error::NotACircuit(format!(
                    "positions {i} and {} ({:?}, {:?}) are not 4-adjacent",
                    i + 1,
                    w[0],
                    w[1]
                )));
            }
        }
        Ok(GridCircuit { vertices })
    }

    pub fn from_pairs(pairs: &[(i64, i64)]) -> Result<Self> {
        GridCircuit::new(pairs.iter().map(|&p| p.into()).collect())
    }

    /// Parses a JSON array of `[x, y]` pairs, first equal to last.
    pub fn from_json(text: &str) -> Result<Self> {
        let pts: Vec<GridPoint> =
            serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        GridCircuit::new(pts)
    }

    /// All entries including the closing repeat of `x_0`.
    pub fn vertices(&self) -> &[GridPoint] {
        &self.vertices
    }

    /// `x_0, ..., x_{n-1}`.
    pub fn cycle(&self) -> &[GridPoint] {
        &self.vertices[..self.vertices.len() - 1]
    }

    /// Number of steps `n`.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn point_set(&self) -> BTreeSet<GridPoint> {
        self.cycle().iter().copied().collect()
    }

    /// Same cyclic circuit started at position `k`.
    pub fn rerooted(&self, k: usize) -> GridCircuit {
        let cyc = self.cycle();
        let n = cyc.len();
        let mut v: Vec<GridPoint> = (0..n).map(|i| cyc[(i + k) % n]).collect();
        v.push(v[0]);
        GridCircuit { vertices: v }
    }

    /// Same circuit traversed backwards.
    pub fn reversed(&self) -> GridCircuit {
        let mut v = self.vertices.clone();
        v.reverse();
        GridCircuit { vertices: v }
    }

    /// Image under a map that preserves 4-adjacency (lattice isometries).
    pub fn mapped(&self, f: impl Fn(GridPoint) -> GridPoint) -> Result<GridCircuit> {
        GridCircuit::new(self.vertices.iter().map(|&p| f(p)).collect())
    }

    /// Inclusive `(min, max)` corners of the bounding box.
    pub fn bounding_box(&self) -> (GridPoint, GridPoint) {
        let xs = self.vertices.iter().map(|p| p.x);
        let ys = self.vertices.iter().map(|p| p.y);
        (
            GridPoint::new(xs.clone().min().unwrap(), ys.clone().min().unwrap()),
            GridPoint::new(xs.max().unwrap(), ys.max().unwrap()),
        )
    }
}

/// Evidence attached to a negative verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `x_i = x_j` for `i < j < n`.
    Repeated { i: usize, j: usize },
    /// `x_i` and `x_j` are diagonal neighbours but not two cyclic steps apart
    /// through a common axis neighbour.
    Diagonal { i: usize, j: usize },
    /// Vertex `i` has `count` diagonal neighbours on the circuit instead of 2.
    NotStrict { i: usize, count: usize },
    /// Unit square with this lower-left corner lies on the circuit.
    Square { corner: GridPoint },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CircuitValidation {
    pub is_closed_path: bool,
    pub is_injective: bool,
    pub is_simple: bool,
    pub is_strict: bool,
    pub contains_square: bool,
    pub witnesses: Vec<Witness>,
}

/// Lower-left corners of unit squares whose four corners all lie in `set`.
pub fn unit_squares(set: &BTreeSet<GridPoint>) -> Vec<GridPoint> {
    set.iter()
        .copied()
        .filter(|&p| {
            set.contains(&p.offset(1, 0))
                && set.contains(&p.offset(1, 1))
                && set.contains(&p.offset(0, 1))
        })
        .collect()
}

pub fn validate_circuit(c: &GridCircuit) -> CircuitValidation {
    let cyc = c.cycle();
    let n = cyc.len();
    let mut witnesses = Vec::new();

    let mut positions: BTreeMap<GridPoint, Vec<usize>> = BTreeMap::new();
    for (i, &p) in cyc.iter().enumerate() {
        positions.entry(p).or_default().push(i);
    }
    let mut is_injective = true;
    for idx in positions.values() {
        for (a, &i) in idx.iter().enumerate() {
            for &j in &idx[a + 1..] {
                is_injective = false;
                witnesses.push(Witness::Repeated { i, j });
            }
        }
    }

    // Diagonal incidences must be two cyclic steps apart, with the vertex in
    // between an axis neighbour of both ends.
    let mut diagonal_ok = true;
    for (i, &p) in cyc.iter().enumerate() {
        for q in db2(p) {
            let Some(js) = positions.get(&q) else { continue };
            for &j in js {
                if j <= i {
                    continue;
                }
                let fwd = j - i;
                let mut ok = false;
                if fwd == 2 {
                    let mid = cyc[i + 1];
                    ok |= mid.is_axis_neighbor(p) && mid.is_axis_neighbor(q);
                }
                if n - fwd == 2 {
                    let mid = cyc[(j + 1) % n];
                    ok |= mid.is_axis_neighbor(p) && mid.is_axis_neighbor(q);
                }
                if !ok {
                    diagonal_ok = false;
                    witnesses.push(Witness::Diagonal { i, j });
                }
            }
        }
    }

    let set: BTreeSet<GridPoint> = cyc.iter().copied().collect();
    let mut is_strict = true;
    for (i, &p) in cyc.iter().enumerate() {
        let count = db2(p).iter().filter(|q| set.contains(q)).count();
        if count != 2 {
            is_strict = false;
            witnesses.push(Witness::NotStrict { i, count });
        }
    }

    let squares = unit_squares(&set);
    let contains_square = !squares.is_empty();
    witnesses.extend(squares.into_iter().map(|corner| Witness::Square { corner }));

    let is_simple = is_injective && diagonal_ok;
    CircuitValidation {
        is_closed_path: true,
        is_injective,
        is_simple,
        is_strict: is_strict && is_injective,
        contains_square,
        witnesses,
    }
}

/// Axis-aligned window of lattice points, inclusive on all sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Window {
    pub min: GridPoint,
    pub max: GridPoint,
}

impl Window {
    pub fn around(c: &GridCircuit, margin: i64) -> Window {
        let (lo, hi) = c.bounding_box();
        Window {
            min: lo.offset(-margin, -margin),
            max: hi.offset(margin, margin),
        }
    }

    pub fn contains(&self, p: GridPoint) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }

    pub fn on_border(&self, p: GridPoint) -> bool {
        p.x == self.min.x || p.x == self.max.x || p.y == self.min.y || p.y == self.max.y
    }

    pub fn points(&self) -> impl Iterator<Item = GridPoint> + '_ {
        (self.min.x..=self.max.x)
            .flat_map(move |x| (self.min.y..=self.max.y).map(move |y| GridPoint::new(x, y)))
    }
}

/// 4-connected components of `window ∖ blocked`. The component touching the
/// window border (if any) comes first; the rest follow in order of their
/// smallest point.
pub fn complement_components(window: &Window, blocked: &BTreeSet<GridPoint>) -> Vec<BTreeSet<GridPoint>> {
    let mut seen: HashSet<GridPoint> = HashSet::new();
    let mut comps: Vec<BTreeSet<GridPoint>> = Vec::new();
    for start in window.points() {
        if blocked.contains(&start) || seen.contains(&start) {
            continue;
        }
        let mut comp = BTreeSet::new();
        let mut queue = VecDeque::from([start]);
        seen.insert(start);
        while let Some(p) = queue.pop_front() {
            comp.insert(p);
            for q in db1(p) {
                if window.contains(q) && !blocked.contains(&q) && seen.insert(q) {
                    queue.push_back(q);
                }
            }
        }
        comps.push(comp);
    }
    if let Some(k) = comps
        .iter()
        .position(|c| c.iter().any(|&p| window.on_border(p)))
    {
        let outer = comps.remove(k);
        comps.insert(0, outer);
    }
    comps
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Interior,
    Exterior,
}

/// Ray hits and corner completions for one side of a circuit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryTrace {
    pub ray_hits: BTreeSet<GridPoint>,
    pub angle_points: BTreeSet<GridPoint>,
    pub closure: BTreeSet<GridPoint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanDecomposition {
    pub circuit: BTreeSet<GridPoint>,
    pub window: Window,
    pub interior: BTreeSet<GridPoint>,
    pub exterior_window: BTreeSet<GridPoint>,
    pub component_count: usize,
    pub interior_boundary: BoundaryTrace,
    pub exterior_boundary: BoundaryTrace,
}

impl JordanDecomposition {
    pub fn interior_closure(&self) -> &BTreeSet<GridPoint> {
        &self.interior_boundary.closure
    }

    pub fn exterior_closure(&self) -> &BTreeSet<GridPoint> {
        &self.exterior_boundary.closure
    }
}

/// Output schema of the `jordan` command.
#[derive(Debug, Clone, Serialize)]
pub struct DecompositionReport<'a> {
    pub interior: &'a BTreeSet<GridPoint>,
    pub exterior_window: &'a BTreeSet<GridPoint>,
    pub boundary_interior_closure: &'a BTreeSet<GridPoint>,
    pub boundary_exterior_closure: &'a BTreeSet<GridPoint>,
    pub component_count: usize,
}

impl<'a> From<&'a JordanDecomposition> for DecompositionReport<'a> {
    fn from(d: &'a JordanDecomposition) -> Self {
        DecompositionReport {
            interior: &d.interior,
            exterior_window: &d.exterior_window,
            boundary_interior_closure: d.interior_closure(),
            boundary_exterior_closure: d.exterior_closure(),
            component_count: d.component_count,
        }
    }
}

/// Splits the lattice minus a simple, square-free circuit into its interior and
/// (windowed) exterior, and traces the boundary from both sides.
pub fn jordan_decompose(c: &GridCircuit, margin: i64) -> Result<JordanDecomposition> {
    if margin < 1 {
        return Err(Error::InvalidParameter(format!("margin must be >= 1, got {margin}")));
    }
    let v = validate_circuit(c);
    if !v.is_simple {
        let w = v
            .witnesses
            .into_iter()
            .filter(|w| matches!(w, Witness::Repeated { .. } | Witness::Diagonal { .. }))
            .collect();
        return Err(Error::NotSimple(w));
    }
    if v.contains_square {
        let corners = v
            .witnesses
            .iter()
            .filter_map(|w| match w {
                Witness::Square { corner } => Some(*corner),
                _ => None,
            })
            .collect();
        return Err(Error::ContainsSquare(corners));
    }

    let window = Window::around(c, margin);
    let circuit = c.point_set();
    let mut comps = complement_components(&window, &circuit);
    if comps.len() != 2 {
        return Err(Error::TheoremViolation { count: comps.len() });
    }
    let interior = comps.pop().unwrap();
    let exterior_window = comps.pop().unwrap();
    if interior.iter().any(|&p| window.on_border(p)) || interior.is_empty() {
        return Err(Error::TheoremViolation { count: 2 });
    }

    let mut d = JordanDecomposition {
        circuit,
        window,
        interior,
        exterior_window,
        component_count: 2,
        interior_boundary: empty_trace(),
        exterior_boundary: empty_trace(),
    };
    d.interior_boundary = boundary_closure(&d, Side::Interior)?;
    d.exterior_boundary = boundary_closure(&d, Side::Exterior)?;
    Ok(d)
}

fn empty_trace() -> BoundaryTrace {
    BoundaryTrace {
        ray_hits: BTreeSet::new(),
        angle_points: BTreeSet::new(),
        closure: BTreeSet::new(),
    }
}

/// Complement components of any closed walk, skipping every validity check.
/// Used to inspect circuits that fall outside the theorem's hypotheses.
pub fn diagnostic_components(c: &GridCircuit, margin: i64) -> Vec<BTreeSet<GridPoint>> {
    complement_components(&Window::around(c, margin), &c.point_set())
}

/// Casts the four axis rays from every point on `side`, keeps the first circuit
/// point each ray meets, then adds the circuit point shared by any two hits
/// that are opposite corners of a unit square.
pub fn boundary_closure(d: &JordanDecomposition, side: Side) -> Result<BoundaryTrace> {
    let region = match side {
        Side::Interior => &d.interior,
        Side::Exterior => &d.exterior_window,
    };
    let mut ray_hits = BTreeSet::new();
    for &start in region {
        for (dx, dy) in AXIS {
            let mut p = start.offset(dx, dy);
            while d.window.contains(p) {
                if d.circuit.contains(&p) {
                    ray_hits.insert(p);
                    break;
                }
                p = p.offset(dx, dy);
            }
        }
    }

    let mut angle_points = BTreeSet::new();
    for &a in &ray_hits {
        for b in db2(a) {
            if b <= a || !ray_hits.contains(&b) {
                continue;
            }
            let common = [GridPoint::new(a.x, b.y), GridPoint::new(b.x, a.y)];
            let on: Vec<GridPoint> = common
                .into_iter()
                .filter(|p| d.circuit.contains(p))
                .collect();
            match on.as_slice() {
                [] => {}
                [p] => {
                    if !ray_hits.contains(p) {
                        angle_points.insert(*p);
                    }
                }
                _ => return Err(Error::SimplicityBroken(a, b)),
            }
        }
    }

    let closure = ray_hits.union(&angle_points).copied().collect();
    Ok(BoundaryTrace {
        ray_hits,
        angle_points,
        closure,
    })
}
