use crate::algebra::Field;
use std::fmt;

/// A point of the projective line F ∪ {∞}.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum ProjValue<F> {
    Finite(F),
    Infinity,
}

impl<F: Field> ProjValue<F> {
    pub fn is_infinite(&self) -> bool {
        matches!(self, ProjValue::Infinity)
    }

    pub fn finite(&self) -> Option<&F> {
        match self {
            ProjValue::Finite(v) => Some(v),
            ProjValue::Infinity => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ProjValue::Finite(v) if v.is_zero())
    }
}

impl<F: fmt::Display> fmt::Display for ProjValue<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjValue::Finite(v) => write!(f, "{v}"),
            ProjValue::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum EvalOutcome<F> {
    Determinate(ProjValue<F>),
    Indeterminate,
}

impl<F: fmt::Display> fmt::Display for EvalOutcome<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalOutcome::Determinate(v) => write!(f, "{v}"),
            EvalOutcome::Indeterminate => write!(f, "?"),
        }
    }
}

impl<F: Field> EvalOutcome<F> {
    pub fn finite(v: F) -> Self {
        EvalOutcome::Determinate(ProjValue::Finite(v))
    }

    pub fn value(&self) -> Option<&ProjValue<F>> {
        match self {
            EvalOutcome::Determinate(v) => Some(v),
            EvalOutcome::Indeterminate => None,
        }
    }

    pub fn is_determinate(&self) -> bool {
        matches!(self, EvalOutcome::Determinate(_))
    }

    fn lift(
        a: &Self,
        b: &Self,
        f: impl FnOnce(&ProjValue<F>, &ProjValue<F>) -> Self,
    ) -> Self {
        match (a, b) {
            (EvalOutcome::Determinate(x), EvalOutcome::Determinate(y)) => f(x, y),
            _ => EvalOutcome::Indeterminate,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::lift(self, o, |x, y| match (x, y) {
            (ProjValue::Finite(a), ProjValue::Finite(b)) => Self::finite(a.add(b)),
            (ProjValue::Infinity, ProjValue::Infinity) => EvalOutcome::Indeterminate,
            _ => EvalOutcome::Determinate(ProjValue::Infinity),
        })
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::lift(self, o, |x, y| match (x, y) {
            (ProjValue::Finite(a), ProjValue::Finite(b)) => Self::finite(a.sub(b)),
            (ProjValue::Infinity, ProjValue::Infinity) => EvalOutcome::Indeterminate,
            _ => EvalOutcome::Determinate(ProjValue::Infinity),
        })
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::lift(self, o, |x, y| match (x, y) {
            (ProjValue::Finite(a), ProjValue::Finite(b)) => Self::finite(a.mul(b)),
            (ProjValue::Finite(a), ProjValue::Infinity)
            | (ProjValue::Infinity, ProjValue::Finite(a)) => {
                if a.is_zero() {
                    EvalOutcome::Indeterminate
                } else {
                    EvalOutcome::Determinate(ProjValue::Infinity)
                }
            }
            (ProjValue::Infinity, ProjValue::Infinity) => {
                EvalOutcome::Determinate(ProjValue::Infinity)
            }
        })
    }

    pub fn div(&self, o: &Self) -> Self {
        Self::lift(self, o, |x, y| match (x, y) {
            (ProjValue::Finite(a), ProjValue::Finite(b)) => {
                if !b.is_zero() {
                    Self::finite(a.div(b).expect("nonzero divisor"))
                } else if a.is_zero() {
                    EvalOutcome::Indeterminate
                } else {
                    EvalOutcome::Determinate(ProjValue::Infinity)
                }
            }
            (ProjValue::Finite(a), ProjValue::Infinity) => Self::finite(a.zero_like()),
            (ProjValue::Infinity, ProjValue::Finite(_)) => {
                EvalOutcome::Determinate(ProjValue::Infinity)
            }
            (ProjValue::Infinity, ProjValue::Infinity) => EvalOutcome::Indeterminate,
        })
    }

    pub fn neg(&self) -> Self {
        match self {
            EvalOutcome::Determinate(ProjValue::Finite(a)) => Self::finite(a.neg()),
            other => other.clone(),
        }
    }
}

/// Rational expression over the projective line.
#[derive(Clone, Debug)]
pub enum ProjExpr<F> {
    Leaf(ProjValue<F>),
    Add(Box<ProjExpr<F>>, Box<ProjExpr<F>>),
    Sub(Box<ProjExpr<F>>, Box<ProjExpr<F>>),
    Mul(Box<ProjExpr<F>>, Box<ProjExpr<F>>),
    Div(Box<ProjExpr<F>>, Box<ProjExpr<F>>),
}

impl<F> ProjExpr<F> {
    pub fn leaf(v: ProjValue<F>) -> Self {
        ProjExpr::Leaf(v)
    }
    pub fn add(a: Self, b: Self) -> Self {
        ProjExpr::Add(Box::new(a), Box::new(b))
    }
    pub fn sub(a: Self, b: Self) -> Self {
        ProjExpr::Sub(Box::new(a), Box::new(b))
    }
    pub fn mul(a: Self, b: Self) -> Self {
        ProjExpr::Mul(Box::new(a), Box::new(b))
    }
    pub fn div(a: Self, b: Self) -> Self {
        ProjExpr::Div(Box::new(a), Box::new(b))
    }
}

pub fn proj_eval<F: Field>(e: &ProjExpr<F>) -> EvalOutcome<F> {
    match e {
        ProjExpr::Leaf(v) => EvalOutcome::Determinate(v.clone()),
        ProjExpr::Add(a, b) => proj_eval(a).add(&proj_eval(b)),
        ProjExpr::Sub(a, b) => proj_eval(a).sub(&proj_eval(b)),
        ProjExpr::Mul(a, b) => proj_eval(a).mul(&proj_eval(b)),
        ProjExpr::Div(a, b) => proj_eval(a).div(&proj_eval(b)),
    }
}
