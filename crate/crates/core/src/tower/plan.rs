use std::collections::BTreeMap;

use super::{CompatibleColumn, CompatibleTower, Tower, TowerColumn, TowerError};
use crate::lattice::{diagram_from_heights, BoxSet, HeightMap, LatticeError, Point};

/// A finite list of distinct planar positions with a positive height each:
/// the two-dimensional encoding of a scaffolded tower.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FloorPlan {
    points: Vec<Point>,
    heights: Vec<u64>,
}

impl FloorPlan {
    pub fn new(points: Vec<Point>, heights: Vec<u64>) -> Result<Self, TowerError> {
        if points.len() != heights.len() {
            return Err(TowerError::LengthMismatch {
                points: points.len(),
                heights: heights.len(),
            });
        }
        for p in &points {
            if p.dim() != 2 {
                return Err(LatticeError::DimensionMismatch { expected: 2, found: p.dim() }.into());
            }
            if !p.is_nonnegative() {
                return Err(LatticeError::NegativeCoordinate { point: p.clone() }.into());
            }
        }
        if let Some(index) = heights.iter().position(|&h| h == 0) {
            return Err(TowerError::HeightZero { index });
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i] == points[j] {
                    return Err(TowerError::DuplicatePoint { first: i, second: j });
                }
            }
        }
        Ok(FloorPlan { points, heights })
    }

    pub fn empty() -> Self {
        FloorPlan { points: Vec::new(), heights: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn heights(&self) -> &[u64] {
        &self.heights
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Point, u64)> + '_ {
        self.points.iter().zip(self.heights.iter().copied())
    }

    pub fn total_height(&self) -> u64 {
        self.heights.iter().sum()
    }

    /// Total height of the points sitting exactly at `q`.
    pub fn weight(&self, q: &Point) -> u64 {
        self.iter().filter(|(p, _)| *p == q).map(|(_, h)| h).sum()
    }

    /// The best score of a north-east path out of each cell: its own weight
    /// plus the better of its two successors, swept in decreasing `x + y`
    /// so both successors are already known. Cells of score zero are left
    /// out, which makes the result a valid height map.
    pub fn max_score_table(&self) -> HeightMap {
        if self.points.is_empty() {
            return HeightMap::empty();
        }
        let max_x = self.points.iter().map(|p| p[0]).max().expect("nonempty");
        let max_y = self.points.iter().map(|p| p[1]).max().expect("nonempty");
        let mut table: BTreeMap<Point, u64> = BTreeMap::new();
        let cell = |table: &BTreeMap<Point, u64>, x: i64, y: i64| -> u64 {
            table.get(&Point::new(vec![x, y])).copied().unwrap_or(0)
        };
        for x in (0..=max_x).rev() {
            for y in (0..=max_y).rev() {
                let score = self.weight(&Point::new(vec![x, y]))
                    + cell(&table, x + 1, y).max(cell(&table, x, y + 1));
                if score > 0 {
                    table.insert(Point::new(vec![x, y]), score);
                }
            }
        }
        HeightMap::new(table).expect("max score tables are antitone on a staircase support")
    }

    /// Cells with a positive max score: the order ideal of the points.
    pub fn support(&self) -> BoxSet {
        BoxSet::new(2, self.max_score_table().support().cloned())
            .expect("table cells are planar")
    }

    /// Support cells whose right or upper neighbor leaves the support.
    pub fn border(&self) -> BoxSet {
        let support = self.support();
        BoxSet::new(
            2,
            support
                .iter()
                .filter(|q| {
                    !support.contains(&q.shifted(0, 1)) || !support.contains(&q.shifted(1, 1))
                })
                .cloned(),
        )
        .expect("border cells are planar")
    }

    /// A north-east path out of `origin` achieving the max score, stepping
    /// right on ties and stopping once nothing further can be gained.
    pub fn winning_path(&self, origin: &Point) -> Result<NortheastPath, TowerError> {
        if origin.dim() != 2 {
            return Err(
                LatticeError::DimensionMismatch { expected: 2, found: origin.dim() }.into()
            );
        }
        if !origin.is_nonnegative() {
            return Err(LatticeError::NegativeCoordinate { point: origin.clone() }.into());
        }
        let table = self.max_score_table();
        let mut vertices = vec![origin.clone()];
        loop {
            let here = vertices.last().expect("path never empty");
            let right = here.shifted(0, 1);
            let up = here.shifted(1, 1);
            let (right_score, up_score) = (table.get(&right), table.get(&up));
            if right_score == 0 && up_score == 0 {
                break;
            }
            vertices.push(if right_score >= up_score { right } else { up });
        }
        NortheastPath::new(vertices)
    }

    /// Definition-faithful score of a path: the total height of plan points
    /// among its vertices.
    pub fn path_score(&self, path: &NortheastPath) -> u64 {
        path.vertices().iter().map(|v| self.weight(v)).sum()
    }
}

/// A lattice path moving one step right or up at a time.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NortheastPath {
    vertices: Vec<Point>,
}

impl NortheastPath {
    pub fn new(vertices: Vec<Point>) -> Result<Self, TowerError> {
        if vertices.is_empty() {
            return Err(LatticeError::EmptyShape.into());
        }
        for v in &vertices {
            if v.dim() != 2 {
                return Err(LatticeError::DimensionMismatch { expected: 2, found: v.dim() }.into());
            }
            if !v.is_nonnegative() {
                return Err(LatticeError::NegativeCoordinate { point: v.clone() }.into());
            }
        }
        for (index, pair) in vertices.windows(2).enumerate() {
            let step = pair[1].sub(&pair[0]);
            if step != Point::new(vec![1, 0]) && step != Point::new(vec![0, 1]) {
                return Err(TowerError::InvalidPathStep { index });
            }
        }
        Ok(NortheastPath { vertices })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn origin(&self) -> &Point {
        &self.vertices[0]
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Two plans over one shared height list. The sides must each have distinct
/// points, but a point may appear on both sides; resolving such overlaps is
/// one of the descent moves.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CompatibleFloorPlan {
    p: Vec<Point>,
    q: Vec<Point>,
    heights: Vec<u64>,
}

impl CompatibleFloorPlan {
    pub fn new(p: Vec<Point>, q: Vec<Point>, heights: Vec<u64>) -> Result<Self, TowerError> {
        FloorPlan::new(p.clone(), heights.clone())?;
        FloorPlan::new(q.clone(), heights.clone())?;
        Ok(CompatibleFloorPlan { p, q, heights })
    }

    pub fn empty() -> Self {
        CompatibleFloorPlan { p: Vec::new(), q: Vec::new(), heights: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.heights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heights.is_empty()
    }

    pub fn p(&self) -> &[Point] {
        &self.p
    }

    pub fn q(&self) -> &[Point] {
        &self.q
    }

    pub fn heights(&self) -> &[u64] {
        &self.heights
    }

    pub fn total_height(&self) -> u64 {
        self.heights.iter().sum()
    }

    pub fn p_plan(&self) -> FloorPlan {
        FloorPlan::new(self.p.clone(), self.heights.clone())
            .expect("validated when the compatible plan was built")
    }

    pub fn q_plan(&self) -> FloorPlan {
        FloorPlan::new(self.q.clone(), self.heights.clone())
            .expect("validated when the compatible plan was built")
    }

    /// The first pair of indices whose points coincide across the sides.
    pub fn overlap(&self) -> Option<(usize, usize)> {
        for (i, p) in self.p.iter().enumerate() {
            if let Some(j) = self.q.iter().position(|q| q == p) {
                return Some((i, j));
            }
        }
        None
    }
}

/// The minimal realization of a floor plan: the diagram of its max-score
/// table, with column `i` hung below the score at its point, so the column
/// top touches the roof. The result is always a valid scaffolded tower.
pub fn realize(plan: &FloorPlan) -> Result<Tower, TowerError> {
    let table = plan.max_score_table();
    let lambda = diagram_from_heights(&table)?;
    let mut columns = Vec::with_capacity(plan.len());
    for (p, h) in plan.iter() {
        let score = table.get(p);
        let z = score.checked_sub(h).expect("a path through the point scores at least its height");
        columns.push(
            TowerColumn::new(Point::new(vec![p[0], p[1], z as i64]), h)
                .expect("realized columns have positive height"),
        );
    }
    let tower = Tower::new(lambda, columns)?;
    debug_assert!(tower.validate().is_valid(), "realized towers are valid");
    debug_assert!(matches!(tower.is_scaffolded(), Ok(true)), "realized towers are scaffolded");
    Ok(tower)
}

/// Reads the floor plan back off a scaffolded tower: base positions and
/// heights, in column order.
pub fn floor_plan_of(tower: &Tower) -> Result<FloorPlan, TowerError> {
    tower.require_valid()?;
    let scaffold = tower.scaffold_ideal()?;
    if let Some(witness) = tower.lambda().iter().find(|b| !scaffold.contains(b)) {
        return Err(TowerError::NotScaffolded { witness: witness.clone() });
    }
    let points = tower
        .columns()
        .iter()
        .map(|c| Point::new(vec![c.base()[0], c.base()[1]]))
        .collect();
    let heights = tower.columns().iter().map(TowerColumn::height).collect();
    FloorPlan::new(points, heights)
}

/// Realizes both sides over the shared heights.
pub fn realize_compatible(cp: &CompatibleFloorPlan) -> Result<CompatibleTower, TowerError> {
    let lambda_tower = realize(&cp.p_plan())?;
    let mu_tower = realize(&cp.q_plan())?;
    let columns = lambda_tower
        .columns()
        .iter()
        .zip(mu_tower.columns())
        .map(|(l, m)| CompatibleColumn::new(l.height(), l.base().clone(), m.base().clone()))
        .collect::<Result<Vec<_>, _>>()?;
    CompatibleTower::new(lambda_tower.lambda().clone(), mu_tower.lambda().clone(), columns)
}

/// Floor plans of both sides of a scaffolded compatible tower.
pub fn floor_plan_of_compatible(ct: &CompatibleTower) -> Result<CompatibleFloorPlan, TowerError> {
    ct.require_valid()?;
    let (lambda_tower, mu_tower) = ct.to_towers();
    let p = floor_plan_of(&lambda_tower)?;
    let q = floor_plan_of(&mu_tower)?;
    CompatibleFloorPlan::new(p.points().to_vec(), q.points().to_vec(), p.heights().to_vec())
}

/// Deficiency of the instance's minimal realization: shared boxes of the two
/// realized diagrams minus the total height.
pub fn plan_deficiency(cp: &CompatibleFloorPlan) -> Result<i64, TowerError> {
    Ok(realize_compatible(cp)?.deficiency_formula())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{pt, YoungDiagram};

    fn plan<const R: usize>(points: [[i64; 2]; R], heights: [u64; R]) -> FloorPlan {
        FloorPlan::new(points.map(pt).to_vec(), heights.to_vec()).unwrap()
    }

    /// The staircase example: eight points whose table fills a five-row
    /// staircase with top score 10.
    fn staircase_plan() -> FloorPlan {
        plan(
            [[3, 0], [4, 0], [5, 0], [0, 1], [3, 1], [3, 2], [1, 3], [0, 4]],
            [1, 1, 4, 2, 3, 5, 2, 3],
        )
    }

    #[test]
    fn staircase_table_matches_the_printed_rows() {
        let table = staircase_plan().max_score_table();
        assert_eq!(
            table.to_rows(),
            vec![
                vec![10, 9, 9, 9, 5, 4],
                vec![10, 8, 8, 8],
                vec![5, 5, 5, 5],
                vec![3, 2],
                vec![3],
            ]
        );
    }

    #[test]
    fn staircase_support_and_border() {
        let p = staircase_plan();
        let support = p.support();
        assert_eq!(support.len(), 17);
        let border = p.border();
        for cell in [[5, 0], [3, 2], [0, 4]] {
            assert!(border.contains(&pt(cell)), "{cell:?} should be on the border");
        }
        assert!(!border.contains(&pt([0, 0])));
    }

    #[test]
    fn staircase_winning_path_scores_ten() {
        let p = staircase_plan();
        let path = p.winning_path(&pt([0, 0])).unwrap();
        assert_eq!(
            path.vertices(),
            &[pt([0, 0]), pt([0, 1]), pt([1, 1]), pt([2, 1]), pt([3, 1]), pt([3, 2])]
        );
        assert_eq!(p.path_score(&path), 10);
    }

    #[test]
    fn empty_plan_is_silent() {
        let p = FloorPlan::empty();
        assert!(p.max_score_table().is_empty());
        assert!(p.support().is_empty());
        let path = p.winning_path(&pt([0, 0])).unwrap();
        assert_eq!(path.vertices(), &[pt([0, 0])]);
        assert_eq!(p.path_score(&path), 0);
        let tower = realize(&p).unwrap();
        assert!(tower.lambda().is_empty());
        assert!(tower.columns().is_empty());
    }

    #[test]
    fn single_point_scores_its_height_on_the_down_set() {
        let p = plan([[2, 1]], [7]);
        let table = p.max_score_table();
        for x in 0..=2 {
            for y in 0..=1 {
                assert_eq!(table.get(&pt([x, y])), 7);
            }
        }
        assert_eq!(table.get(&pt([3, 0])), 0);
        assert_eq!(table.get(&pt([0, 2])), 0);
        let path = p.winning_path(&pt([2, 1])).unwrap();
        assert_eq!(path.len(), 1);
        assert_eq!(p.path_score(&path), 7);
    }

    #[test]
    fn stacked_influence_offsets_the_rear_column() {
        let p = plan([[0, 0], [1, 0]], [1, 1]);
        let tower = realize(&p).unwrap();
        assert_eq!(tower.lambda().len(), 3);
        assert_eq!(tower.columns()[0].base(), &pt([0, 0, 1]));
        assert_eq!(tower.columns()[1].base(), &pt([1, 0, 0]));
        assert!(tower.validate().is_valid());
    }

    #[test]
    fn realization_is_valid_and_scaffolded() {
        let tower = realize(&staircase_plan()).unwrap();
        assert!(tower.validate().is_valid());
        assert!(tower.is_scaffolded().unwrap());
        assert_eq!(tower.lambda().len(), 10 + 9 + 9 + 9 + 5 + 4 + 10 + 8 + 8 + 8 + 5 * 4 + 3 + 2 + 3);
    }

    #[test]
    fn plan_of_realization_is_the_identity() {
        let p = staircase_plan();
        assert_eq!(floor_plan_of(&realize(&p).unwrap()).unwrap(), p);
    }

    #[test]
    fn realization_of_plan_shrinks_the_tower() {
        // Three singleton columns at distance two along the axes: the
        // scaffold has 7 boxes, the minimal realization only 6.
        let lambda = YoungDiagram::from_points(
            3,
            [
                [0, 0, 0],
                [1, 0, 0],
                [2, 0, 0],
                [0, 1, 0],
                [0, 2, 0],
                [0, 0, 1],
                [0, 0, 2],
            ]
            .map(pt),
        )
        .unwrap();
        let tower = Tower::new(
            lambda,
            vec![
                TowerColumn::new(pt([2, 0, 0]), 1).unwrap(),
                TowerColumn::new(pt([0, 2, 0]), 1).unwrap(),
                TowerColumn::new(pt([0, 0, 2]), 1).unwrap(),
            ],
        )
        .unwrap();
        let plan = floor_plan_of(&tower).unwrap();
        assert_eq!(plan.points(), &[pt([2, 0]), pt([0, 2]), pt([0, 0])]);
        assert_eq!(plan.heights(), &[1, 1, 1]);
        let again = realize(&plan).unwrap();
        assert_eq!(again.lambda().len(), 6);
        assert!(again.lambda().is_subset_of(tower.lambda()));
    }

    #[test]
    fn invalid_towers_are_refused_before_scaffolding() {
        let lambda =
            YoungDiagram::from_points(3, [[0, 0, 0], [1, 0, 0]].map(pt)).unwrap();
        let tower =
            Tower::new(lambda, vec![TowerColumn::new(pt([0, 0, 0]), 1).unwrap()]).unwrap();
        // The box (1,0,0) sits beside the column inside the diagram, which
        // breaks saturation; floor_plan_of reports that before any
        // scaffolding complaint.
        assert!(matches!(
            floor_plan_of(&tower),
            Err(TowerError::InvalidTower { .. })
        ));
    }

    #[test]
    fn unscaffolded_but_valid_tower_reports_not_scaffolded() {
        // The axis tower widened by (1,1,0): still valid, since the extra
        // box is not an upward neighbor of any column box, but no longer
        // the order ideal of its columns.
        let boxes = [
            [0, 0, 0],
            [1, 0, 0],
            [2, 0, 0],
            [0, 1, 0],
            [0, 2, 0],
            [0, 0, 1],
            [0, 0, 2],
            [1, 1, 0],
        ];
        let lambda = YoungDiagram::from_points(3, boxes.map(pt)).unwrap();
        let tower = Tower::new(
            lambda,
            vec![
                TowerColumn::new(pt([2, 0, 0]), 1).unwrap(),
                TowerColumn::new(pt([0, 2, 0]), 1).unwrap(),
                TowerColumn::new(pt([0, 0, 2]), 1).unwrap(),
            ],
        )
        .unwrap();
        assert!(tower.validate().is_valid());
        assert!(!tower.is_scaffolded().unwrap());
        assert!(matches!(
            floor_plan_of(&tower),
            Err(TowerError::NotScaffolded { witness }) if witness == pt([1, 1, 0])
        ));
    }

    #[test]
    fn plan_validation_errors() {
        assert!(matches!(
            FloorPlan::new(vec![pt([0, 0])], vec![]),
            Err(TowerError::LengthMismatch { points: 1, heights: 0 })
        ));
        assert!(matches!(
            FloorPlan::new(vec![pt([0, 0])], vec![0]),
            Err(TowerError::HeightZero { index: 0 })
        ));
        assert!(matches!(
            FloorPlan::new(vec![pt([1, 1]), pt([1, 1])], vec![1, 1]),
            Err(TowerError::DuplicatePoint { first: 0, second: 1 })
        ));
        assert!(matches!(
            FloorPlan::new(vec![pt([0, -1])], vec![1]),
            Err(TowerError::Lattice(LatticeError::NegativeCoordinate { .. }))
        ));
        assert!(matches!(
            NortheastPath::new(vec![pt([0, 0]), pt([1, 1])]),
            Err(TowerError::InvalidPathStep { index: 0 })
        ));
    }

    #[test]
    fn cross_side_overlap_is_allowed_in_compatible_plans() {
        let cp = CompatibleFloorPlan::new(vec![pt([0, 0])], vec![pt([0, 0])], vec![1]).unwrap();
        assert_eq!(cp.overlap(), Some((0, 0)));
        let disjoint =
            CompatibleFloorPlan::new(vec![pt([0, 0])], vec![pt([2, 2])], vec![3]).unwrap();
        assert_eq!(disjoint.overlap(), None);
    }

    #[test]
    fn shared_heights_realize_both_sides() {
        // One column at the origin against the same column one cell up: mu
        // picks up an extra supporting column of boxes.
        let cp =
            CompatibleFloorPlan::new(vec![pt([0, 0])], vec![pt([0, 1])], vec![2]).unwrap();
        let ct = realize_compatible(&cp).unwrap();
        assert!(ct.is_valid());
        assert_eq!(ct.lambda().len(), 2);
        assert_eq!(ct.mu().len(), 4);
        assert_eq!(plan_deficiency(&cp).unwrap(), 0);
        let back = floor_plan_of_compatible(&ct).unwrap();
        assert_eq!(back, cp);
    }
}
