use super::{Algebra, AlgebraElement, AlgebraError};
use crate::linalg::SparseMatrix;
use crate::report::Check;

/// A candidate algebra map from a presented algebra, fixed by generator images.
pub struct AlgebraMorphism {
    source: Algebra,
    target: Algebra,
    images: Vec<AlgebraElement>,
}

impl AlgebraMorphism {
    pub fn new(source: &Algebra, target: &Algebra, images: &[(&str, AlgebraElement)]) -> Result<Self, AlgebraError> {
        if !source.is_presented() {
            return Err(AlgebraError::Unsupported(format!("{} has no presentation", source.name())));
        }
        let mut out = Vec::with_capacity(source.generators().len());
        for g in source.generators() {
            let img = images
                .iter()
                .find(|(n, _)| *n == g.name)
                .map(|(_, e)| e.clone())
                .ok_or_else(|| AlgebraError::UnknownGenerator(format!("no image for {}", g.name)))?;
            if !std::sync::Arc::ptr_eq(img.algebra(), target) {
                return Err(AlgebraError::AlgebraMismatch(img.algebra().name().into(), target.name().into()));
            }
            out.push(img);
        }
        Ok(AlgebraMorphism { source: source.clone(), target: target.clone(), images: out })
    }

    pub fn source(&self) -> &Algebra {
        &self.source
    }

    pub fn target(&self) -> &Algebra {
        &self.target
    }

    fn word_image(&self, letters: &[(usize, u32)]) -> AlgebraElement {
        let mut acc = AlgebraElement::one(&self.target);
        for &(a, e) in letters {
            for _ in 0..e {
                acc = &acc * &self.images[a];
            }
        }
        acc
    }

    fn monomial_image(&self, e: &[u32]) -> AlgebraElement {
        let letters: Vec<(usize, u32)> = e.iter().copied().enumerate().collect();
        self.word_image(&letters)
    }

    /// Image of a source basis monomial.
    pub fn on_basis(&self, i: usize) -> AlgebraElement {
        self.monomial_image(self.source.exponents(i).expect("presented source"))
    }

    pub fn apply(&self, a: &AlgebraElement) -> AlgebraElement {
        let mut acc = AlgebraElement::zero(&self.target);
        for (i, c) in a.coeffs().iter() {
            acc = &acc + &self.on_basis(*i).scale(c);
        }
        acc
    }

    /// The linear map on normal bases, column i = image of basis i.
    pub fn matrix(&self) -> SparseMatrix {
        let cols = (0..self.source.dim()).map(|i| self.on_basis(i).coeffs().clone()).collect();
        SparseMatrix::from_columns(self.target.dim(), cols)
    }

    /// Every defining relation of the source maps to zero.
    pub fn check_relations(&self) -> Vec<Check> {
        self.source
            .relations()
            .iter()
            .map(|r| {
                let lhs = self.word_image(&r.lhs);
                let mut rhs = AlgebraElement::zero(&self.target);
                for (c, e) in &r.rhs {
                    rhs = &rhs + &self.monomial_image(e).scale(c);
                }
                let residual = &lhs - &rhs;
                let witness = (!residual.is_zero()).then(|| format!("residual {residual}"));
                Check::from_witness(format!("relation {}", r.name), "", witness)
            })
            .collect()
    }

    /// Equal dimensions and full rank on the normal bases.
    pub fn check_bijective(&self) -> Check {
        let (ds, dt) = (self.source.dim(), self.target.dim());
        let rank = self.matrix().to_dense(self.target.field()).rank();
        let details = format!("rank {rank}, dims {ds} -> {dt}");
        if ds == dt && rank == dt {
            Check::pass("bijective", details)
        } else {
            Check::fail("bijective", details.clone(), vec![details])
        }
    }

    pub fn verify(&self) -> Vec<Check> {
        let mut out = self.check_relations();
        out.push(self.check_bijective());
        out
    }
}
