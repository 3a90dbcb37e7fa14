//! Sensor field geometry: the rectangular field, the candidate lattice
//! ("board") laid over it, deployments of nodes, and neighbor/isolation
//! queries under planar or toroidal metrics.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors from field, board, and deployment operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FieldError {
    #[error("{name} must be positive, got {value}")]
    NonPositiveDimension { name: &'static str, value: f64 },
    #[error("range_m {range_m} must be smaller than the shortest field side {min_side_m}")]
    RangeExceedsField { range_m: f64, min_side_m: f64 },
    #[error("pitch_m must be positive, got {pitch_m}")]
    NonPositivePitch { pitch_m: f64 },
    #[error("pitch_m {pitch_m} exceeds the shortest field side {min_side_m}")]
    PitchExceedsField { pitch_m: f64, min_side_m: f64 },
    #[error("intersection ({row}, {col}) is already occupied")]
    AlreadyOccupied { row: u32, col: u32 },
    #[error("({x_m}, {y_m}) is not an intersection of this board")]
    NotAnIntersection { x_m: f64, y_m: f64 },
    #[error("node index {index} out of range for deployment of {len} nodes")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("node position ({x_m}, {y_m}) lies outside the field")]
    OutOfBounds { x_m: f64, y_m: f64 },
}

/// Distance convention for neighbor queries.
///
/// The toroidal metric wraps both axes (per-axis distance is
/// `min(|d|, side - |d|)`), which removes edge effects and matches the
/// assumptions behind the closed-form density model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Planar,
    Toroidal,
}

impl Metric {
    /// Distance between two positions on the given field.
    pub fn distance(self, field: &FieldSpec, a: [f64; 2], b: [f64; 2]) -> f64 {
        self.distance_sq(field, a, b).sqrt()
    }

    /// Squared distance; cheaper than [`Metric::distance`] for threshold
    /// checks and minimum searches.
    pub fn distance_sq(self, field: &FieldSpec, a: [f64; 2], b: [f64; 2]) -> f64 {
        let (dx, dy) = match self {
            Metric::Planar => (a[0] - b[0], a[1] - b[1]),
            Metric::Toroidal => {
                let dx = (a[0] - b[0]).abs();
                let dy = (a[1] - b[1]).abs();
                (dx.min(field.length_m - dx), dy.min(field.width_m - dy))
            }
        };
        dx * dx + dy * dy
    }
}

/// A rectangular sensor field with a single node radius used for both
/// sensing and communication.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawFieldSpec")]
pub struct FieldSpec {
    length_m: f64,
    width_m: f64,
    range_m: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFieldSpec {
    length_m: f64,
    width_m: f64,
    range_m: f64,
}

impl TryFrom<RawFieldSpec> for FieldSpec {
    type Error = FieldError;
    fn try_from(raw: RawFieldSpec) -> Result<Self, FieldError> {
        FieldSpec::new(raw.length_m, raw.width_m, raw.range_m)
    }
}

impl FieldSpec {
    pub fn new(length_m: f64, width_m: f64, range_m: f64) -> Result<Self, FieldError> {
        for (name, value) in [
            ("length_m", length_m),
            ("width_m", width_m),
            ("range_m", range_m),
        ] {
            if !value.is_finite() || value <= 0.0 {
                return Err(FieldError::NonPositiveDimension { name, value });
            }
        }
        let min_side_m = length_m.min(width_m);
        if range_m >= min_side_m {
            return Err(FieldError::RangeExceedsField {
                range_m,
                min_side_m,
            });
        }
        Ok(Self {
            length_m,
            width_m,
            range_m,
        })
    }

    pub fn length_m(&self) -> f64 {
        self.length_m
    }

    pub fn width_m(&self) -> f64 {
        self.width_m
    }

    pub fn range_m(&self) -> f64 {
        self.range_m
    }

    /// Field area in square meters.
    pub fn area_m2(&self) -> f64 {
        self.length_m * self.width_m
    }

    pub fn is_square(&self) -> bool {
        self.length_m == self.width_m
    }

    pub fn contains(&self, pos: [f64; 2]) -> bool {
        pos[0] >= 0.0 && pos[0] <= self.length_m && pos[1] >= 0.0 && pos[1] <= self.width_m
    }
}

/// A lattice intersection. `x_m = col * pitch`, `y_m = row * pitch`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub row: u32,
    pub col: u32,
    pub x_m: f64,
    pub y_m: f64,
}

impl GridPoint {
    pub fn position(&self) -> [f64; 2] {
        [self.x_m, self.y_m]
    }
}

/// A square lattice of candidate intersections over a field, plus the set
/// of occupied ("closed") intersections.
#[derive(Debug, Clone, PartialEq)]
pub struct GridBoard {
    field: FieldSpec,
    pitch_m: f64,
    rows: u32,
    cols: u32,
    closed: HashSet<(u32, u32)>,
}

impl GridBoard {
    /// Lay a lattice of the given pitch over the field. Intersections sit
    /// at integer multiples of the pitch on both axes, borders included,
    /// and the closed set starts empty.
    pub fn new(field: FieldSpec, pitch_m: f64) -> Result<Self, FieldError> {
        if !pitch_m.is_finite() || pitch_m <= 0.0 {
            return Err(FieldError::NonPositivePitch { pitch_m });
        }
        let min_side_m = field.length_m().min(field.width_m());
        if pitch_m > min_side_m {
            return Err(FieldError::PitchExceedsField {
                pitch_m,
                min_side_m,
            });
        }
        let rows = (field.width_m() / pitch_m).floor() as u32 + 1;
        let cols = (field.length_m() / pitch_m).floor() as u32 + 1;
        Ok(Self {
            field,
            pitch_m,
            rows,
            cols,
            closed: HashSet::new(),
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn pitch_m(&self) -> f64 {
        self.pitch_m
    }

    pub fn rows(&self) -> u32 {
        self.rows
    }

    pub fn cols(&self) -> u32 {
        self.cols
    }

    pub fn intersection_count(&self) -> usize {
        self.rows as usize * self.cols as usize
    }

    pub fn occupied_count(&self) -> usize {
        self.closed.len()
    }

    pub fn free_count(&self) -> usize {
        self.intersection_count() - self.closed.len()
    }

    pub fn is_full(&self) -> bool {
        self.free_count() == 0
    }

    pub fn is_occupied(&self, row: u32, col: u32) -> bool {
        self.closed.contains(&(row, col))
    }

    /// The intersection at (row, col), if it exists.
    pub fn point(&self, row: u32, col: u32) -> Option<GridPoint> {
        (row < self.rows && col < self.cols).then_some(GridPoint {
            row,
            col,
            x_m: col as f64 * self.pitch_m,
            y_m: row as f64 * self.pitch_m,
        })
    }

    /// The intersection nearest the middle of the lattice.
    pub fn center_point(&self) -> GridPoint {
        self.point(self.rows / 2, self.cols / 2)
            .expect("center is always on the board")
    }

    /// All intersections in row-major order.
    pub fn intersections(&self) -> impl Iterator<Item = GridPoint> + '_ {
        (0..self.rows).flat_map(move |row| {
            (0..self.cols).map(move |col| self.point(row, col).expect("in range"))
        })
    }

    /// All unoccupied intersections in row-major order.
    pub fn free_points(&self) -> impl Iterator<Item = GridPoint> + '_ {
        self.intersections()
            .filter(|p| !self.closed.contains(&(p.row, p.col)))
    }

    /// Occupy an intersection. Occupying a point twice is an error; the
    /// placement loop guards with a freeness check before calling.
    pub fn occupy(&mut self, point: &GridPoint) -> Result<(), FieldError> {
        let valid = self
            .point(point.row, point.col)
            .is_some_and(|p| p.x_m == point.x_m && p.y_m == point.y_m);
        if !valid {
            return Err(FieldError::NotAnIntersection {
                x_m: point.x_m,
                y_m: point.y_m,
            });
        }
        if !self.closed.insert((point.row, point.col)) {
            return Err(FieldError::AlreadyOccupied {
                row: point.row,
                col: point.col,
            });
        }
        Ok(())
    }
}

/// An ordered set of node positions on a field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDeployment")]
pub struct Deployment {
    field: FieldSpec,
    metric: Metric,
    nodes: Vec<[f64; 2]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDeployment {
    field: FieldSpec,
    metric: Metric,
    nodes: Vec<[f64; 2]>,
}

impl TryFrom<RawDeployment> for Deployment {
    type Error = FieldError;
    fn try_from(raw: RawDeployment) -> Result<Self, FieldError> {
        Deployment::new(raw.field, raw.metric, raw.nodes)
    }
}

impl Deployment {
    pub fn new(field: FieldSpec, metric: Metric, nodes: Vec<[f64; 2]>) -> Result<Self, FieldError> {
        for &pos in &nodes {
            if !field.contains(pos) {
                return Err(FieldError::OutOfBounds {
                    x_m: pos[0],
                    y_m: pos[1],
                });
            }
        }
        Ok(Self {
            field,
            metric,
            nodes,
        })
    }

    pub fn empty(field: FieldSpec, metric: Metric) -> Self {
        Self {
            field,
            metric,
            nodes: Vec::new(),
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn nodes(&self) -> &[[f64; 2]] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Append a node position, which must lie inside the field.
    pub fn push(&mut self, pos: [f64; 2]) -> Result<(), FieldError> {
        if !self.field.contains(pos) {
            return Err(FieldError::OutOfBounds {
                x_m: pos[0],
                y_m: pos[1],
            });
        }
        self.nodes.push(pos);
        Ok(())
    }

    /// Metric-aware distance from an arbitrary position to one node.
    pub fn distance_to_node(&self, pos: [f64; 2], index: usize) -> f64 {
        self.metric.distance(&self.field, pos, self.nodes[index])
    }

    /// Number of other nodes within `radius_m` of node `index`.
    pub fn count_neighbors(&self, index: usize, radius_m: f64) -> Result<usize, FieldError> {
        if index >= self.nodes.len() {
            return Err(FieldError::IndexOutOfRange {
                index,
                len: self.nodes.len(),
            });
        }
        let me = self.nodes[index];
        Ok(self
            .nodes
            .iter()
            .enumerate()
            .filter(|&(j, &other)| {
                j != index && self.metric.distance(&self.field, me, other) <= radius_m
            })
            .count())
    }

    /// True iff node `index` has no other node within `radius_m`.
    pub fn is_isolated(&self, index: usize, radius_m: f64) -> Result<bool, FieldError> {
        Ok(self.count_neighbors(index, radius_m)? == 0)
    }
}
