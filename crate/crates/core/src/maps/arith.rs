use crate::algebra::Field;
use crate::error::{MathError, Result};
use crate::finite_field::EvalOutcome;

/// The operations the map formulas need. Implemented by a strict wrapper
/// (errors on division by zero) and by projective outcomes.
pub trait Arith: Clone {
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn over(&self, o: &Self) -> Self;
    fn int(&self, n: i64) -> Self;
}

/// Field arithmetic that turns a zero divisor into `SingularInput`.
#[derive(Clone, Debug)]
pub struct Strict<F>(pub Result<F>);

impl<F: Field> Strict<F> {
    pub fn of(v: &F) -> Self {
        Strict(Ok(v.clone()))
    }

    fn zip(&self, o: &Self, f: impl FnOnce(&F, &F) -> Result<F>) -> Self {
        match (&self.0, &o.0) {
            (Ok(a), Ok(b)) => Strict(f(a, b)),
            (Err(e), _) | (_, Err(e)) => Strict(Err(e.clone())),
        }
    }
}

impl<F: Field> Arith for Strict<F> {
    fn plus(&self, o: &Self) -> Self {
        self.zip(o, |a, b| Ok(a.add(b)))
    }
    fn minus(&self, o: &Self) -> Self {
        self.zip(o, |a, b| Ok(a.sub(b)))
    }
    fn times(&self, o: &Self) -> Self {
        self.zip(o, |a, b| Ok(a.mul(b)))
    }
    fn over(&self, o: &Self) -> Self {
        self.zip(o, |a, b| {
            if b.is_zero() {
                Err(MathError::SingularInput("zero denominator".into()))
            } else {
                a.div(b)
            }
        })
    }
    fn int(&self, n: i64) -> Self {
        match &self.0 {
            Ok(a) => Strict(Ok(a.from_i64_like(n))),
            Err(e) => Strict(Err(e.clone())),
        }
    }
}

impl<F: Field> Arith for EvalOutcome<F> {
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn over(&self, o: &Self) -> Self {
        self.div(o)
    }
    fn int(&self, n: i64) -> Self {
        match self {
            EvalOutcome::Determinate(crate::finite_field::ProjValue::Finite(a)) => {
                EvalOutcome::finite(a.from_i64_like(n))
            }
            _ => panic!("integer constants need a finite template"),
        }
    }
}
