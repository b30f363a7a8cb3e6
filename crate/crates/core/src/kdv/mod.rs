//! Discrete KdV lattice evolution, reduction, soliton determinants and
//! period detection.

mod soliton;

pub use soliton::{soliton_sigma, soliton_x, SolitonParams};

use crate::algebra::Field;
use crate::error::{MathError, Result};
use crate::finite_field::{EvalOutcome, Fq, ProjValue};
use crate::maps::{kdv_step, kdv_step_proj};
use crate::ratfunc::RatFunc;

pub const DEFAULT_DEGREE_CAP: usize = 512;

/// Initial row x_1^0..x_N^0 and left boundary y_1^t. When the boundary is
/// shorter than the run, its last value repeats.
#[derive(Clone, Debug)]
pub struct KdVLattice<F> {
    pub delta: F,
    pub init: Vec<F>,
    pub boundary: Vec<F>,
}

/// `x[t][n-1]` = x_n^t for t = 0..=steps; `y[t][n-1]` = y_n^t for
/// t = 0..steps and n = 1..=N+1.
#[derive(Clone, Debug, PartialEq)]
pub struct KdVGrid<T> {
    pub x: Vec<Vec<T>>,
    pub y: Vec<Vec<T>>,
}

impl<T> KdVGrid<T> {
    pub fn width(&self) -> usize {
        self.x.first().map_or(0, Vec::len)
    }

    /// x_n^t with 1-based n.
    pub fn x_at(&self, n: usize, t: usize) -> &T {
        &self.x[t][n - 1]
    }

    /// y_n^t with 1-based n.
    pub fn y_at(&self, n: usize, t: usize) -> &T {
        &self.y[t][n - 1]
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> KdVGrid<U> {
        let g = |rows: &Vec<Vec<T>>| rows.iter().map(|r| r.iter().map(&f).collect()).collect();
        KdVGrid {
            x: g(&self.x),
            y: g(&self.y),
        }
    }
}

fn boundary_at<T: Clone>(b: &[T], t: usize) -> Option<T> {
    b.get(t).or_else(|| b.last()).cloned()
}

impl<F: Field> KdVLattice<F> {
    pub fn new(delta: F, init: Vec<F>, boundary: Vec<F>) -> Result<Self> {
        if init.is_empty() || boundary.is_empty() {
            return Err(MathError::InvalidArgument(
                "need at least one initial value and one boundary value".into(),
            ));
        }
        Ok(KdVLattice {
            delta,
            init,
            boundary,
        })
    }

    /// Row-by-row sweep; `check` runs on every new cell.
    pub fn evolve_with(
        &self,
        steps: usize,
        mut check: impl FnMut(&F) -> Result<()>,
    ) -> Result<KdVGrid<F>> {
        let mut x = vec![self.init.clone()];
        let mut y = Vec::with_capacity(steps);
        for t in 0..steps {
            let mut yrow = vec![boundary_at(&self.boundary, t).unwrap()];
            let mut xrow = Vec::with_capacity(self.init.len());
            for (i, xc) in x[t].iter().enumerate() {
                let (xn, yn) = kdv_step(xc, &yrow[i], &self.delta).map_err(|e| match e {
                    MathError::SingularInput(_) => MathError::SymbolicSingular { n: i + 1, t },
                    e => e,
                })?;
                check(&xn)?;
                check(&yn)?;
                xrow.push(xn);
                yrow.push(yn);
            }
            x.push(xrow);
            y.push(yrow);
        }
        Ok(KdVGrid { x, y })
    }

    pub fn evolve(&self, steps: usize) -> Result<KdVGrid<F>> {
        self.evolve_with(steps, |_| Ok(()))
    }
}

/// Symbolic evolution over F_r(δ) with a degree cap.
pub fn kdv_evolve(
    lattice: &KdVLattice<RatFunc<Fq>>,
    steps: usize,
    degree_cap: usize,
) -> Result<KdVGrid<RatFunc<Fq>>> {
    lattice.evolve_with(steps, |v| {
        let d = v.degree();
        if d > degree_cap {
            Err(MathError::DegreeOverflow {
                degree: d,
                cap: degree_cap,
            })
        } else {
            Ok(())
        }
    })
}

/// Lifts constant data over F_r to a lattice over F_r(δ) with δ symbolic.
pub fn symbolic_lattice(init: &[Fq], boundary: &[Fq]) -> Result<KdVLattice<RatFunc<Fq>>> {
    let like = init
        .first()
        .ok_or_else(|| MathError::InvalidArgument("empty initial row".into()))?;
    let c = |v: &Fq| RatFunc::constant(v.clone());
    KdVLattice::new(
        RatFunc::variable(like),
        init.iter().map(c).collect(),
        boundary.iter().map(c).collect(),
    )
}

pub fn kdv_reduce(grid: &KdVGrid<RatFunc<Fq>>, d0: &Fq) -> KdVGrid<ProjValue<Fq>> {
    grid.map(|v| v.reduce_at(d0))
}

/// Direct evolution on the projective line; ∞ and indeterminate forms
/// propagate.
pub fn kdv_evolve_proj<F: Field>(
    delta: &F,
    init: &[EvalOutcome<F>],
    boundary: &[EvalOutcome<F>],
    steps: usize,
) -> KdVGrid<EvalOutcome<F>> {
    let mut x = vec![init.to_vec()];
    let mut y = Vec::with_capacity(steps);
    for t in 0..steps {
        let mut yrow = vec![boundary_at(boundary, t).expect("nonempty boundary")];
        let mut xrow = Vec::with_capacity(init.len());
        for (i, xc) in x[t].iter().enumerate() {
            let (xn, yn) = kdv_step_proj(xc, &yrow[i], delta);
            xrow.push(xn);
            yrow.push(yn);
        }
        x.push(xrow);
        y.push(yrow);
    }
    KdVGrid { x, y }
}

/// Smallest P such that the sequence is periodic with period P from some
/// index s ≤ len/2 on, with at least two full periods observed after s.
pub fn period_detect<T: PartialEq>(seq: &[T]) -> Option<usize> {
    let len = seq.len();
    (1..=len / 2).find(|&p| {
        let s = (0..len - p)
            .rev()
            .find(|&i| seq[i] != seq[i + p])
            .map_or(0, |i| i + 1);
        s <= len / 2 && len - s >= 2 * p
    })
}
