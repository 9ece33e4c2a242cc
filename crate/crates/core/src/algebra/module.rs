use super::{AlgebraElement, AlgebraError, FiniteDimAlgebra};
use crate::graded::{GradedMap, GradedSpace};
use crate::linalg::SparseMatrix;
use crate::report::Check;

/// A left module over a presented algebra, given by the action of each generator
/// as a graded map of the generator's degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraModule {
    space: GradedSpace,
    actions: Vec<GradedMap>,
}

impl AlgebraModule {
    /// Generator actions in generator order.
    pub fn new(alg: &FiniteDimAlgebra, space: GradedSpace, actions: Vec<SparseMatrix>) -> Result<AlgebraModule, AlgebraError> {
        let gens = alg.generators();
        if actions.len() != gens.len() {
            return Err(AlgebraError::Invalid(format!("expected {} generator actions, got {}", gens.len(), actions.len())));
        }
        let actions = gens
            .iter()
            .zip(actions)
            .map(|(g, m)| GradedMap::new(space.clone(), space.clone(), g.degree as i64, m))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AlgebraModule { space, actions })
    }

    /// The algebra acting on itself by left multiplication.
    pub fn regular(alg: &super::Algebra) -> AlgebraModule {
        let actions = (0..alg.generators().len())
            .map(|a| alg.left_mult_operator(&AlgebraElement::basis(alg, alg.gen_basis(a))))
            .collect();
        AlgebraModule::new(alg, alg.space().clone(), actions).expect("left multiplication is homogeneous")
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn actions(&self) -> &[GradedMap] {
        &self.actions
    }

    pub fn action(&self, alg: &FiniteDimAlgebra, name: &str) -> Result<&GradedMap, AlgebraError> {
        Ok(&self.actions[alg.generator_index(name)?])
    }

    fn exponent_action(&self, e: &[u32]) -> SparseMatrix {
        let mut acc = SparseMatrix::identity(self.space.dim());
        for (a, &k) in e.iter().enumerate() {
            if k > 0 {
                acc = acc.compose(&self.actions[a].matrix().pow(k));
            }
        }
        acc
    }

    /// The action of a basis monomial.
    pub fn basis_action(&self, alg: &FiniteDimAlgebra, i: usize) -> SparseMatrix {
        self.exponent_action(alg.exponents(i).expect("presented algebra"))
    }

    /// The action of an arbitrary element.
    pub fn element_action(&self, a: &AlgebraElement) -> SparseMatrix {
        let n = self.space.dim();
        let mut acc = SparseMatrix::zero(n, n);
        for (i, c) in a.coeffs().iter() {
            acc = acc.add(&self.basis_action(a.algebra(), *i).scale(c));
        }
        acc
    }

    /// Every defining relation acts by zero.
    pub fn verify(&self, alg: &FiniteDimAlgebra) -> Vec<Check> {
        alg.relations()
            .iter()
            .map(|r| {
                let mut lhs = SparseMatrix::identity(self.space.dim());
                for &(a, k) in &r.lhs {
                    lhs = lhs.compose(&self.actions[a].matrix().pow(k));
                }
                let mut rhs = SparseMatrix::zero(self.space.dim(), self.space.dim());
                for (c, e) in &r.rhs {
                    rhs = rhs.add(&self.exponent_action(e).scale(c));
                }
                let witness = lhs
                    .first_difference(&rhs)
                    .map(|j| format!("on {}: {} vs {}", self.space.label(j), lhs.column(j), rhs.column(j)));
                Check::from_witness(format!("module relation {}", r.name), format!("{} on {}", alg.name(), self.space), witness)
            })
            .collect()
    }
}
