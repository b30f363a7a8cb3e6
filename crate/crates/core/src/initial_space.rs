//! The space of initial conditions for dP_II over PF_r: PF_r × PF_r blown up
//! twice at each of (±1, ∞) and (∞, ±1).
//!
//! Coordinates near a base point use the small coordinate s (1/y for the
//! (±1, ∞) patches, 1/x for the (∞, ±1) patches) and the ratio
//!
//!   c = (x ∓ 1)·y   or   c = x·(y ∓ 1),
//!
//! so the first exceptional curve E1 is parametrised by c ∈ PF_r. The second
//! blow-up sits at c = −α_n (patches through +1) or c = β_n (patches through
//! −1), and E2 is parametrised by W = (c + α_n)/s, resp. W = (β_n − c)/s.
//! This W stays nondegenerate when α_n or β_n vanishes.
//!
//! The step is computed on curve germs over F_r(ε): a germ through the point
//! is pushed through the map and the limit of the image is read off in the
//! same charts. The relabelling to the next time step shifts c by −δ/2 and
//! leaves W alone.

use crate::algebra::Field;
use crate::error::{MathError, Result};
use crate::finite_field::{Fq, PrimePower, ProjValue};
use crate::maps::DP2Schedule;
use crate::ratfunc::RatFunc;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Patch {
    /// (1, ∞)
    OneInf,
    /// (−1, ∞)
    MinusOneInf,
    /// (∞, 1)
    InfOne,
    /// (∞, −1)
    InfMinusOne,
}

impl Patch {
    pub const ALL: [Patch; 4] = [Patch::OneInf, Patch::MinusOneInf, Patch::InfOne, Patch::InfMinusOne];

    /// ±1 coordinate of the base point
    fn sign(self) -> i64 {
        match self {
            Patch::OneInf | Patch::InfOne => 1,
            Patch::MinusOneInf | Patch::InfMinusOne => -1,
        }
    }

    fn x_finite(self) -> bool {
        matches!(self, Patch::OneInf | Patch::MinusOneInf)
    }

    fn center(self, alpha: &Fq, beta: &Fq) -> Fq {
        if self.sign() == 1 {
            alpha.neg()
        } else {
            beta.clone()
        }
    }

    fn base_point(self, ctx: &Arc<PrimePower>) -> (ProjValue<Fq>, ProjValue<Fq>) {
        let v = ProjValue::Finite(Fq::new(ctx, self.sign()));
        if self.x_finite() {
            (v, ProjValue::Infinity)
        } else {
            (ProjValue::Infinity, v)
        }
    }
}

impl fmt::Display for Patch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Patch::OneInf => "(1,inf)",
            Patch::MinusOneInf => "(-1,inf)",
            Patch::InfOne => "(inf,1)",
            Patch::InfMinusOne => "(inf,-1)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OmegaPoint {
    /// a point of PF_r × PF_r other than the four base points
    Affine { x: ProjValue<Fq>, y: ProjValue<Fq> },
    /// first exceptional curve; c ≠ the centre of the second blow-up
    E1 { patch: Patch, c: ProjValue<Fq> },
    /// second exceptional curve
    E2 { patch: Patch, w: ProjValue<Fq> },
}

impl OmegaPoint {
    pub fn stratum(&self) -> &'static str {
        match self {
            OmegaPoint::Affine { .. } => "affine",
            OmegaPoint::E1 { .. } => "E1",
            OmegaPoint::E2 { .. } => "E2",
        }
    }

    pub fn is_affine(&self) -> bool {
        matches!(self, OmegaPoint::Affine { .. })
    }

    /// Whether the point survives in the minimal space.
    pub fn in_minimal(&self) -> bool {
        match self {
            OmegaPoint::Affine { .. } => true,
            OmegaPoint::E1 { .. } => false,
            OmegaPoint::E2 { w, .. } => !w.is_infinite(),
        }
    }
}

impl fmt::Display for OmegaPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaPoint::Affine { x, y } => write!(f, "({x},{y})"),
            OmegaPoint::E1 { patch, c } => write!(f, "E1{patch}:{c}"),
            OmegaPoint::E2 { patch, w } => write!(f, "E2{patch}:{w}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct OmegaSpace {
    pub ctx: Arc<PrimePower>,
    pub n: i64,
    pub sched: DP2Schedule<Fq>,
    pub points: Vec<OmegaPoint>,
    pub minimal: bool,
}

fn proj_line(ctx: &Arc<PrimePower>) -> Vec<ProjValue<Fq>> {
    Fq::all(ctx)
        .map(ProjValue::Finite)
        .chain(std::iter::once(ProjValue::Infinity))
        .collect()
}

/// Enumerates Ω̃ (or Ω when `minimal`) at time n.
pub fn build_space(
    ctx: &Arc<PrimePower>,
    n: i64,
    sched: &DP2Schedule<Fq>,
    minimal: bool,
) -> Result<OmegaSpace> {
    if ctx.p() == 2 {
        return Err(MathError::InvalidArgument("the field order must be odd".into()));
    }
    let (alpha, beta) = (sched.alpha(n)?, sched.beta(n)?);
    let line = proj_line(ctx);
    let base: Vec<_> = Patch::ALL.iter().map(|p| p.base_point(ctx)).collect();
    let mut points = Vec::new();
    for x in &line {
        for y in &line {
            if !base.contains(&(x.clone(), y.clone())) {
                points.push(OmegaPoint::Affine {
                    x: x.clone(),
                    y: y.clone(),
                });
            }
        }
    }
    for patch in Patch::ALL {
        let center = ProjValue::Finite(patch.center(&alpha, &beta));
        for c in &line {
            if *c != center {
                points.push(OmegaPoint::E1 { patch, c: c.clone() });
            }
        }
        for w in &line {
            points.push(OmegaPoint::E2 { patch, w: w.clone() });
        }
    }
    if minimal {
        points.retain(OmegaPoint::in_minimal);
    }
    Ok(OmegaSpace {
        ctx: ctx.clone(),
        n,
        sched: sched.clone(),
        points,
        minimal,
    })
}

type Germ = RatFunc<Fq>;

struct Charts {
    ctx: Arc<PrimePower>,
    alpha: Fq,
    beta: Fq,
}

impl Charts {
    fn k(&self, v: i64) -> Germ {
        RatFunc::constant(Fq::new(&self.ctx, v))
    }

    fn fq(&self, v: &Fq) -> Germ {
        RatFunc::constant(v.clone())
    }

    fn eps(&self) -> Germ {
        RatFunc::variable(&Fq::new(&self.ctx, 0))
    }

    /// x = x₀ + ε (shift) resp. 1/ε + shift at infinity
    fn coordinate(&self, v: &ProjValue<Fq>, shift: i64) -> Result<Germ> {
        let e = self.eps();
        Ok(match v {
            ProjValue::Finite(v) => self.fq(v).add(&e.mul(&self.k(shift))).add(&e.mul(&e)),
            ProjValue::Infinity => e.inv()?.add(&self.k(shift)),
        })
    }

    /// sign of W in terms of c − centre
    fn orient(patch: Patch) -> i64 {
        patch.sign()
    }

    /// (x, y) from the chart data (s, c) of a patch
    fn from_chart(&self, patch: Patch, s: &Germ, c: &Germ) -> Result<(Germ, Germ)> {
        let big = s.inv()?;
        let near = self.k(patch.sign()).add(&c.mul(s));
        Ok(if patch.x_finite() {
            (near, big)
        } else {
            (big, near)
        })
    }

    /// (s, c) of a germ in the chart of a patch
    fn to_chart(&self, patch: Patch, x: &Germ, y: &Germ) -> Result<(Germ, Germ)> {
        let (near, big) = if patch.x_finite() { (x, y) } else { (y, x) };
        let c = near.sub(&self.k(patch.sign())).mul(big);
        Ok((big.inv()?, c))
    }

    fn germ(&self, pt: &OmegaPoint) -> Result<(Germ, Germ)> {
        let e = self.eps();
        match pt {
            OmegaPoint::Affine { x, y } => Ok((self.coordinate(x, 1)?, self.coordinate(y, -1)?)),
            OmegaPoint::E1 { patch, c } => {
                let (s, c) = match c {
                    ProjValue::Finite(c) => (e.clone(), self.fq(c).add(&e)),
                    ProjValue::Infinity => (e.mul(&e), e.inv()?),
                };
                self.from_chart(*patch, &s, &c)
            }
            OmegaPoint::E2 { patch, w } => {
                let s = e.mul(&e);
                let center = self.fq(&patch.center(&self.alpha, &self.beta));
                let or = self.k(Self::orient(*patch));
                let dc = match w {
                    ProjValue::Finite(w) => self.fq(w).add(&e).mul(&s),
                    ProjValue::Infinity => e.clone(),
                };
                let c = center.add(&or.mul(&dc));
                self.from_chart(*patch, &s, &c)
            }
        }
    }

    fn classify(&self, x: &Germ, y: &Germ) -> Result<OmegaPoint> {
        let zero = Fq::new(&self.ctx, 0);
        let lx = x.reduce_at(&zero);
        let ly = y.reduce_at(&zero);
        let Some(patch) = Patch::ALL
            .into_iter()
            .find(|p| p.base_point(&self.ctx) == (lx.clone(), ly.clone()))
        else {
            return Ok(OmegaPoint::Affine { x: lx, y: ly });
        };
        let (s, c) = self.to_chart(patch, x, y)?;
        let center = patch.center(&self.alpha, &self.beta);
        let lc = c.reduce_at(&zero);
        if lc != ProjValue::Finite(center.clone()) {
            return Ok(OmegaPoint::E1 { patch, c: lc });
        }
        let w = c
            .sub(&self.fq(&center))
            .mul(&self.k(Self::orient(patch)))
            .div(&s)?;
        Ok(OmegaPoint::E2 {
            patch,
            w: w.reduce_at(&zero),
        })
    }
}

impl OmegaSpace {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, pt: &OmegaPoint) -> bool {
        self.points.contains(pt)
    }

    /// The space at the next time step.
    pub fn next(&self) -> Result<OmegaSpace> {
        build_space(&self.ctx, self.n + 1, &self.sched, self.minimal)
    }

    pub fn is_autonomous(&self) -> bool {
        self.sched.delta.is_zero()
    }

    /// Closed-form size: r² + 6r − 3 for Ω, r² + 10r + 1 for Ω̃.
    pub fn expected_len(&self) -> u64 {
        let r = self.ctx.r();
        if self.minimal {
            r * r + 6 * r - 3
        } else {
            r * r + 10 * r + 1
        }
    }

    fn charts(&self) -> Result<Charts> {
        Ok(Charts {
            ctx: self.ctx.clone(),
            alpha: self.sched.alpha(self.n)?,
            beta: self.sched.beta(self.n)?,
        })
    }

    /// The map at time n as an automorphism of Ω̃ at time n (no relabelling).
    pub fn omega_tilde(&self, pt: &OmegaPoint) -> Result<OmegaPoint> {
        let ch = self.charts()?;
        let (x, y) = ch.germ(pt)?;
        let one = ch.k(1);
        let xn = ch
            .fq(&ch.alpha)
            .div(&one.sub(&x))?
            .add(&ch.fq(&ch.beta).div(&one.add(&x))?)
            .sub(&y);
        ch.classify(&xn, &x)
    }
}

/// Relabels a point of Ω̃ at time n as a point of Ω̃ at time n + 1.
pub fn iota(pt: &OmegaPoint, sched: &DP2Schedule<Fq>) -> Result<OmegaPoint> {
    Ok(match pt {
        OmegaPoint::E1 {
            patch,
            c: ProjValue::Finite(c),
        } => {
            let half = sched.delta.div(&sched.delta.from_i64_like(2))?;
            OmegaPoint::E1 {
                patch: *patch,
                c: ProjValue::Finite(c.sub(&half)),
            }
        }
        other => other.clone(),
    })
}

/// One time step: the image of a point of the space at time n in the space
/// at time n + 1.
pub fn omega_step(pt: &OmegaPoint, space: &OmegaSpace) -> Result<OmegaPoint> {
    iota(&space.omega_tilde(pt)?, &space.sched)
}

/// Images of every point of the space, in the order of `space.points`.
pub fn step_all(space: &OmegaSpace) -> Result<Vec<OmegaPoint>> {
    space.points.iter().map(|pt| omega_step(pt, space)).collect()
}

/// Whether the step is a bijection from the space onto the next one.
pub fn is_bijective(space: &OmegaSpace) -> Result<bool> {
    let next: BTreeSet<OmegaPoint> = space.next()?.points.into_iter().collect();
    let images: BTreeSet<OmegaPoint> = step_all(space)?.into_iter().collect();
    Ok(images.len() == space.len() && images == next)
}

/// Smallest set of labels containing PF_r × PF_r minus the base points and
/// closed under every step of one period, computed by iteration.
pub fn minimal_closure(space: &OmegaSpace) -> Result<BTreeSet<OmegaPoint>> {
    let full = build_space(&space.ctx, space.n, &space.sched, false)?;
    let period = space.ctx.p() as i64;
    let mut set: BTreeSet<OmegaPoint> = full.points.iter().filter(|p| p.is_affine()).cloned().collect();
    loop {
        let before = set.len();
        let mut cur = full.clone();
        for _ in 0..period {
            let images = set
                .iter()
                .map(|pt| omega_step(pt, &cur))
                .collect::<Result<Vec<_>>>()?;
            set.extend(images);
            cur = cur.next()?;
        }
        if set.len() == before {
            return Ok(set);
        }
    }
}

/// Cycles of the step on the space. With `autonomous` the single step is
/// used and δ must vanish; otherwise the composite over one period p (after
/// which the schedule repeats) is decomposed.
pub fn orbit_decomposition(space: &OmegaSpace, autonomous: bool) -> Result<Vec<Vec<OmegaPoint>>> {
    if autonomous && !space.is_autonomous() {
        return Err(MathError::NotAutonomous);
    }
    let steps = if autonomous { 1 } else { space.ctx.p() };
    let mut image: BTreeMap<OmegaPoint, OmegaPoint> =
        space.points.iter().map(|p| (p.clone(), p.clone())).collect();
    let mut cur = space.clone();
    for _ in 0..steps {
        for v in image.values_mut() {
            *v = omega_step(v, &cur)?;
        }
        cur = cur.next()?;
    }
    let mut seen = BTreeSet::new();
    let mut cycles = Vec::new();
    for start in &space.points {
        if seen.contains(start) {
            continue;
        }
        let mut cycle = vec![start.clone()];
        seen.insert(start.clone());
        let mut pt = image[start].clone();
        while pt != *start {
            if !seen.insert(pt.clone()) {
                // not a permutation of this point set
                return Err(MathError::DomainViolation(format!("{pt} is not in the space")));
            }
            cycle.push(pt.clone());
            pt = image
                .get(&pt)
                .cloned()
                .ok_or_else(|| MathError::DomainViolation(format!("{pt} is not in the space")))?;
        }
        cycles.push(cycle);
    }
    Ok(cycles)
}

/// Graphviz rendering of the step graph.
pub fn to_dot(space: &OmegaSpace) -> Result<String> {
    let mut out = String::from("digraph omega {\n");
    let images = step_all(space)?;
    for (pt, im) in space.points.iter().zip(&images) {
        out.push_str(&format!("  \"{pt}\" -> \"{im}\";\n"));
    }
    out.push_str("}\n");
    Ok(out)
}
