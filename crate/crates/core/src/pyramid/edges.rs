use super::{Grid, Pyramid};

/// Gradient direction in 45° steps, counter-clockwise from +x with rows
/// growing downwards. `d` and `d + 4` share an orientation and differ in
/// contrast polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Direction(u8);

impl Direction {
    pub const ALL: [Direction; 8] = [
        Direction(0),
        Direction(1),
        Direction(2),
        Direction(3),
        Direction(4),
        Direction(5),
        Direction(6),
        Direction(7),
    ];

    pub fn new(d: u8) -> Self {
        assert!(d < 8, "direction out of range");
        Self(d)
    }

    /// Nearest 45° step of the gradient `(gx, gy)`.
    pub fn quantize(gx: i32, gy: i32) -> Self {
        let angle = (gy as f64).atan2(gx as f64);
        let step = (angle / std::f64::consts::FRAC_PI_4).round() as i32;
        Self(step.rem_euclid(8) as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn opposite(self) -> Self {
        Self((self.0 + 4) % 8)
    }

    /// Directions 0, 2, 4, 6.
    pub fn is_axis_aligned(self) -> bool {
        self.0.is_multiple_of(2)
    }

    /// Gradient points up or down, so the edge line runs horizontally.
    pub fn is_horizontal_edge(self) -> bool {
        self.0 == 2 || self.0 == 6
    }

    /// Gradient points left or right, so the edge line runs vertically.
    pub fn is_vertical_edge(self) -> bool {
        self.0 == 0 || self.0 == 4
    }

    /// Pairs of 2×2 child positions `(row, col)` lying along the edge line.
    fn collinear_pairs(self) -> &'static [[(usize, usize); 2]] {
        match self.0 % 4 {
            0 => &[[(0, 0), (1, 0)], [(0, 1), (1, 1)]],
            1 => &[[(0, 1), (1, 0)]],
            2 => &[[(0, 0), (0, 1)], [(1, 0), (1, 1)]],
            _ => &[[(0, 0), (1, 1)]],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MicroEdge {
    pub row: usize,
    pub col: usize,
    pub direction: Direction,
    /// `|gx| + |gy|` of the 3×3 operator.
    pub magnitude: u32,
}

pub type MicroEdgeGrid = Grid<Option<MicroEdge>>;

const CHILDREN: [(usize, usize); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];

/// One micro-edge per base cell where the 3×3 gradient magnitude reaches
/// `threshold`. Border cells never carry an edge.
pub fn extract_micro_edges(p: &Pyramid, threshold: u32) -> MicroEdgeGrid {
    let img = p.base();
    let side = img.side();
    Grid::par_from_fn(side, |r, c| {
        if r == 0 || c == 0 || r + 1 == side || c + 1 == side {
            return None;
        }
        let px = |dr: usize, dc: usize| *img.get(r + dr - 1, c + dc - 1) as i32;
        let gx = (px(0, 2) + 2 * px(1, 2) + px(2, 2)) - (px(0, 0) + 2 * px(1, 0) + px(2, 0));
        let gy = (px(2, 0) + 2 * px(2, 1) + px(2, 2)) - (px(0, 0) + 2 * px(0, 1) + px(0, 2));
        let magnitude = gx.unsigned_abs() + gy.unsigned_abs();
        (magnitude >= threshold && magnitude > 0).then(|| MicroEdge {
            row: r,
            col: c,
            direction: Direction::quantize(gx, gy),
            magnitude,
        })
    })
}

/// Per-direction evidence gathered by one cell: how many children agreed,
/// plus the count and coordinate sums of the base micro-edges beneath them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Tally {
    pub support_count: u32,
    pub micro_count: u32,
    pub row_sum: u64,
    pub col_sum: u64,
}

impl Tally {
    fn absorb(&mut self, other: &Tally) {
        self.support_count += 1;
        self.micro_count += other.micro_count;
        self.row_sum += other.row_sum;
        self.col_sum += other.col_sum;
    }
}

type Slots = [Option<Tally>; 8];

/// Edge tokens of one pyramid level, up to one per direction per cell.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeLayer {
    level: u32,
    grid: Grid<Slots>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeSegment {
    pub level: u32,
    pub row: usize,
    pub col: usize,
    pub direction: Direction,
    pub support_count: u32,
    pub micro_count: u32,
    pub row_sum: u64,
    pub col_sum: u64,
}

impl EdgeSegment {
    /// Mean base-level `(row, col)` of the micro-edges beneath this segment.
    pub fn centroid(&self) -> (f64, f64) {
        let n = self.micro_count as f64;
        (self.row_sum as f64 / n, self.col_sum as f64 / n)
    }
}

impl EdgeLayer {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn side(&self) -> usize {
        self.grid.side()
    }

    pub fn get(&self, row: usize, col: usize, direction: Direction) -> Option<EdgeSegment> {
        self.grid.get(row, col)[direction.index()].map(|t| self.segment(row, col, direction, t))
    }

    pub fn has_any(&self, row: usize, col: usize) -> bool {
        self.grid.get(row, col).iter().any(Option::is_some)
    }

    pub fn segments_at(&self, row: usize, col: usize) -> usize {
        self.grid
            .get(row, col)
            .iter()
            .filter(|t| t.is_some())
            .count()
    }

    fn segment(&self, row: usize, col: usize, direction: Direction, t: Tally) -> EdgeSegment {
        EdgeSegment {
            level: self.level,
            row,
            col,
            direction,
            support_count: t.support_count,
            micro_count: t.micro_count,
            row_sum: t.row_sum,
            col_sum: t.col_sum,
        }
    }

    /// All segments in raster order, then by direction.
    pub fn segments(&self) -> Vec<EdgeSegment> {
        self.grid
            .iter()
            .flat_map(|((r, c), slots)| {
                Direction::ALL
                    .iter()
                    .filter_map(move |&d| slots[d.index()].map(|t| (r, c, d, t)))
            })
            .map(|(r, c, d, t)| self.segment(r, c, d, t))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.grid
            .cells()
            .iter()
            .map(|s| s.iter().filter(|t| t.is_some()).count())
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Short edges one level above the micro-edges: a cell emits direction `d`
/// when at least `min_support` of its four children hold a micro-edge of `d`.
pub fn aggregate_short_edges(
    micro: &MicroEdgeGrid,
    base_level: u32,
    min_support: u32,
) -> EdgeLayer {
    let side = micro.side() / 2;
    let grid = Grid::par_from_fn(side, |r, c| {
        let mut slots: Slots = [None; 8];
        for &(dr, dc) in &CHILDREN {
            if let Some(e) = micro.get(2 * r + dr, 2 * c + dc) {
                let tally = Tally {
                    support_count: 1,
                    micro_count: 1,
                    row_sum: e.row as u64,
                    col_sum: e.col as u64,
                };
                let slot = slots[e.direction.index()].get_or_insert_with(Tally::default);
                slot.absorb(&tally);
            }
        }
        for slot in &mut slots {
            if slot.is_some_and(|t| t.support_count < min_support) {
                *slot = None;
            }
        }
        slots
    });
    EdgeLayer {
        level: base_level - 1,
        grid,
    }
}

/// Long edges one level above the short edges: direction `d` needs at least
/// `min_support` children holding `d`, two of which lie along the edge line.
pub fn aggregate_long_edges(short: &EdgeLayer, min_support: u32) -> EdgeLayer {
    let side = short.side() / 2;
    let grid = Grid::par_from_fn(side, |r, c| {
        let mut slots: Slots = [None; 8];
        for d in Direction::ALL {
            let child =
                |(dr, dc): (usize, usize)| short.grid.get(2 * r + dr, 2 * c + dc)[d.index()];
            let collinear = d
                .collinear_pairs()
                .iter()
                .any(|pair| pair.iter().all(|&pos| child(pos).is_some()));
            if !collinear {
                continue;
            }
            let mut tally = Tally::default();
            for &pos in &CHILDREN {
                if let Some(t) = child(pos) {
                    tally.absorb(&t);
                }
            }
            if tally.support_count >= min_support {
                slots[d.index()] = Some(tally);
            }
        }
        slots
    });
    EdgeLayer {
        level: short.level - 1,
        grid,
    }
}
