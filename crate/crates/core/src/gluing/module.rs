use std::collections::BTreeMap;

use super::{ColumnMap, GluingDatum, GluingError, MatrixTuple};
use crate::lattice::Point;

/// Which side of the glued module a basis vector came from, and which box it
/// stands for. Glued boxes appear once, labeled by their lambda-side copy.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BasisLabel {
    Lambda(Point),
    Mu(Point),
}

impl std::fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BasisLabel::Lambda(p) => write!(f, "lambda{p}"),
            BasisLabel::Mu(p) => write!(f, "mu{p}"),
        }
    }
}

/// The module a valid gluing datum defines, with the action of each variable
/// written out as a column map over an explicit monomial basis.
///
/// The basis lists every lambda box, then every mu box that was not glued
/// away, both in descending lexicographic order. Multiplying a basis monomial
/// by a variable moves one step up its own diagram, falls to zero when it
/// leaves the diagram, and on the mu side crosses over to the lambda copy
/// whenever it lands in a glued region. Saturation makes that crossover
/// well defined.
pub struct GluedModule {
    vars: usize,
    basis: Vec<BasisLabel>,
    actions: Vec<ColumnMap>,
}

impl GluedModule {
    pub fn new(datum: &GluingDatum) -> Result<Self, GluingError> {
        datum.require_valid()?;
        let vars = datum.dim();

        // Mu-side boxes of each glued region, mapped to their lambda copies.
        let mut crossover: BTreeMap<Point, Point> = BTreeMap::new();
        for (i, component) in datum.components().iter().enumerate() {
            let in_lambda = datum.sited_lambda(i);
            let in_mu = datum.sited_mu(i);
            for shape_box in component.shape().iter() {
                let l = shape_box.add(component.lambda_offset());
                let m = shape_box.add(component.mu_offset());
                debug_assert!(in_lambda.contains(&l) && in_mu.contains(&m));
                crossover.insert(m, l);
            }
        }

        let mut basis: Vec<BasisLabel> = Vec::new();
        let mut lambda_index: BTreeMap<Point, u32> = BTreeMap::new();
        let mut mu_index: BTreeMap<Point, u32> = BTreeMap::new();
        for b in datum.lambda().iter().rev() {
            lambda_index.insert(b.clone(), basis.len() as u32);
            basis.push(BasisLabel::Lambda(b.clone()));
        }
        for b in datum.mu().iter().rev() {
            if crossover.contains_key(b) {
                continue;
            }
            mu_index.insert(b.clone(), basis.len() as u32);
            basis.push(BasisLabel::Mu(b.clone()));
        }

        let mut actions = Vec::with_capacity(vars);
        for axis in 0..vars {
            let mut targets: Vec<Option<u32>> = Vec::with_capacity(basis.len());
            for label in &basis {
                targets.push(match label {
                    BasisLabel::Lambda(p) => {
                        let next = p.shifted(axis, 1);
                        lambda_index.get(&next).copied()
                    }
                    BasisLabel::Mu(p) => {
                        let next = p.shifted(axis, 1);
                        if !datum.mu().contains(&next) {
                            None
                        } else if let Some(l) = crossover.get(&next) {
                            Some(lambda_index[l])
                        } else {
                            Some(mu_index[&next])
                        }
                    }
                });
            }
            actions.push(ColumnMap::new(targets).expect("indices point into the basis"));
        }

        Ok(GluedModule { vars, basis, actions })
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn basis(&self) -> &[BasisLabel] {
        &self.basis
    }

    pub fn action(&self, axis: usize) -> &ColumnMap {
        &self.actions[axis]
    }

    /// All variable actions as one commuting tuple.
    pub fn matrices(&self) -> Result<MatrixTuple, GluingError> {
        MatrixTuple::new(self.actions.clone())
    }
}
