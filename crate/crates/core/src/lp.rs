//! Exact simplex for `max cᵀx  s.t.  Ax ≤ b, x ≥ 0`.
//!
//! The tableau is kept fraction-free: every entry is an integer over a common
//! denominator (the previous pivot), so each update is an exact division.
//! The solver first runs on `i128` and restarts on arbitrary-precision
//! integers if any intermediate value overflows. Pivoting follows Bland's
//! rule; infeasible starts use a single auxiliary variable.
//!
//! Every outcome carries a certificate that can be checked without trusting
//! the solver: optimal solutions come with dual multipliers, infeasibility
//! with a Farkas vector `y ≥ 0` such that `Aᵀy ≥ 0` and `bᵀy < 0`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    /// Constraint rows, each of length `c.len()`.
    pub a: Vec<Vec<BigInt>>,
    pub b: Vec<BigInt>,
    pub c: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        x: Vec<BigRational>,
        value: BigRational,
        /// One multiplier per constraint row; `Aᵀy ≥ c` and `bᵀy = value`.
        dual: Vec<BigRational>,
    },
    Infeasible {
        /// Nonnegative row multipliers with `Aᵀy ≥ 0` and `bᵀy < 0`.
        farkas: Vec<BigInt>,
    },
    Unbounded,
}

impl LinearProgram {
    pub fn feasibility(a: Vec<Vec<BigInt>>, b: Vec<BigInt>) -> LinearProgram {
        let n = a.first().map_or(0, Vec::len);
        LinearProgram {
            a,
            b,
            c: vec![BigInt::zero(); n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.c.len()
    }

    pub fn is_feasible_point(&self, x: &[BigRational]) -> bool {
        x.len() == self.num_vars()
            && x.iter().all(|v| !v.is_negative())
            && self.a.iter().zip(&self.b).all(|(row, bi)| {
                let lhs: BigRational = row
                    .iter()
                    .zip(x)
                    .map(|(aij, xj)| BigRational::from_integer(aij.clone()) * xj)
                    .sum();
                lhs <= BigRational::from_integer(bi.clone())
            })
    }

    /// Checks a Farkas certificate of infeasibility.
    pub fn is_farkas_certificate(&self, y: &[BigInt]) -> bool {
        if y.len() != self.a.len() || y.iter().any(Signed::is_negative) {
            return false;
        }
        let col_ok = (0..self.num_vars()).all(|j| {
            let s: BigInt = self.a.iter().zip(y).map(|(row, yi)| &row[j] * yi).sum();
            !s.is_negative()
        });
        let by: BigInt = self.b.iter().zip(y).map(|(bi, yi)| bi * yi).sum();
        col_ok && by.is_negative()
    }

    /// Checks that `x` is optimal by exhibiting `y` with `y ≥ 0`, `Aᵀy ≥ c`
    /// and `bᵀy = cᵀx`.
    pub fn is_optimal_pair(&self, x: &[BigRational], y: &[BigRational]) -> bool {
        let q = |v: &BigInt| BigRational::from_integer(v.clone());
        if !self.is_feasible_point(x) || y.len() != self.a.len() || y.iter().any(|v| v.is_negative()) {
            return false;
        }
        let dual_ok = (0..self.num_vars()).all(|j| {
            let s: BigRational = self.a.iter().zip(y).map(|(row, yi)| q(&row[j]) * yi).sum();
            s >= q(&self.c[j])
        });
        let primal: BigRational = self.c.iter().zip(x).map(|(cj, xj)| q(cj) * xj).sum();
        let dual: BigRational = self.b.iter().zip(y).map(|(bi, yi)| q(bi) * yi).sum();
        dual_ok && primal == dual
    }
}

pub fn solve(lp: &LinearProgram) -> LpOutcome {
    match solve_with::<i128>(lp) {
        Some(out) => out,
        None => solve_with::<BigInt>(lp).expect("arbitrary precision never overflows"),
    }
}

/// Runs the solver on the given integer type; `None` on overflow.
pub(crate) fn solve_with<T: Exact>(lp: &LinearProgram) -> Option<LpOutcome> {
    Tableau::<T>::build(lp)?.run(lp)
}

pub(crate) trait Exact: Clone + Ord + std::fmt::Debug {
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn nil() -> Self;
    fn unit() -> Self;
    fn signum_ord(&self) -> Ordering;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    /// Exact division; the caller guarantees divisibility.
    fn div_exact(&self, o: &Self) -> Self;

    fn is_nil(&self) -> bool {
        self.signum_ord() == Ordering::Equal
    }
    fn is_pos(&self) -> bool {
        self.signum_ord() == Ordering::Greater
    }
    fn is_neg(&self) -> bool {
        self.signum_ord() == Ordering::Less
    }
}

impl Exact for i128 {
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn nil() -> Self {
        0
    }
    fn unit() -> Self {
        1
    }
    fn signum_ord(&self) -> Ordering {
        self.cmp(&0)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn div_exact(&self, o: &Self) -> Self {
        debug_assert_eq!(self % o, 0);
        self / o
    }
}

impl Exact for BigInt {
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn signum_ord(&self) -> Ordering {
        self.sign().cmp(&num_bigint::Sign::NoSign)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn div_exact(&self, o: &Self) -> Self {
        debug_assert!(Zero::is_zero(&(self % o)));
        self / o
    }
}

/// Dictionary form: for constraint row `i`,
/// `x[basic[i]] = (t[i][rhs] - Σ_j t[i][j] · x[nonbasic[j]]) / det`, and the
/// last row holds the objective `z` in the same layout.
///
/// Variable labels: `0..n` are the original variables, `n` the auxiliary
/// variable, `n + 1 + i` the slack of constraint `i`. Bland's rule compares
/// labels.
struct Tableau<T> {
    t: Vec<Vec<T>>,
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
    det: T,
    n: usize,
    m: usize,
}

enum Run {
    Optimal,
    Unbounded,
}

impl<T: Exact> Tableau<T> {
    fn build(lp: &LinearProgram) -> Option<Self> {
        let n = lp.num_vars();
        let m = lp.a.len();
        let need_aux = lp.b.iter().any(Signed::is_negative);
        let cols = n + usize::from(need_aux);
        let mut t = Vec::with_capacity(m + 1);
        for (row, bi) in lp.a.iter().zip(&lp.b) {
            let mut r = Vec::with_capacity(cols + 1);
            for v in row {
                r.push(T::from_big(v)?);
            }
            if need_aux {
                r.push(T::unit().neg()?);
            }
            r.push(T::from_big(bi)?);
            t.push(r);
        }
        t.push(vec![T::nil(); cols + 1]);
        let mut nonbasic: Vec<usize> = (0..n).collect();
        if need_aux {
            nonbasic.push(n);
        }
        Some(Tableau {
            t,
            basic: (0..m).map(|i| n + 1 + i).collect(),
            nonbasic,
            det: T::unit(),
            n,
            m,
        })
    }

    fn rhs(&self) -> usize {
        self.nonbasic.len()
    }

    fn pivot(&mut self, r: usize, s: usize) -> Option<()> {
        let p = self.t[r][s].clone();
        let d = self.det.clone();
        let width = self.rhs() + 1;
        for i in 0..=self.m {
            if i == r {
                continue;
            }
            let f = self.t[i][s].clone();
            if f.is_nil() {
                // (t·p - 0) / d
                for j in 0..width {
                    if j != s {
                        self.t[i][j] = self.t[i][j].mul(&p)?.div_exact(&d);
                    }
                }
                continue;
            }
            for j in 0..width {
                if j != s {
                    let v = self.t[i][j].mul(&p)?.sub(&f.mul(&self.t[r][j])?)?;
                    self.t[i][j] = v.div_exact(&d);
                }
            }
            self.t[i][s] = f.neg()?;
        }
        self.t[r][s] = d;
        self.det = p;
        if self.det.is_neg() {
            for row in &mut self.t {
                for v in row.iter_mut() {
                    *v = v.neg()?;
                }
            }
            self.det = self.det.neg()?;
        }
        std::mem::swap(&mut self.basic[r], &mut self.nonbasic[s]);
        Some(())
    }

    /// Bland's rule until optimal or unbounded.
    fn iterate(&mut self) -> Option<Run> {
        let rhs = self.rhs();
        loop {
            let entering = (0..rhs)
                .filter(|&j| self.t[self.m][j].is_neg())
                .min_by_key(|&j| self.nonbasic[j]);
            let Some(s) = entering else {
                return Some(Run::Optimal);
            };
            let mut leave: Option<usize> = None;
            for i in 0..self.m {
                if !self.t[i][s].is_pos() {
                    continue;
                }
                leave = Some(match leave {
                    None => i,
                    Some(k) => {
                        // compare t[i][rhs]/t[i][s] with t[k][rhs]/t[k][s]
                        let lhs = self.t[i][rhs].mul(&self.t[k][s])?;
                        let rhs_v = self.t[k][rhs].mul(&self.t[i][s])?;
                        match lhs.cmp(&rhs_v) {
                            Ordering::Less => i,
                            Ordering::Greater => k,
                            Ordering::Equal if self.basic[i] < self.basic[k] => i,
                            Ordering::Equal => k,
                        }
                    }
                });
            }
            let Some(r) = leave else {
                return Some(Run::Unbounded);
            };
            self.pivot(r, s)?;
        }
    }

    fn run(mut self, lp: &LinearProgram) -> Option<LpOutcome> {
        let n = self.n;
        if self.nonbasic.contains(&n) {
            let aux = self.nonbasic.iter().position(|&l| l == n).expect("aux column");
            self.t[self.m][aux] = T::unit();
            let rhs = self.rhs();
            let r = (0..self.m)
                .min_by(|&i, &k| self.t[i][rhs].cmp(&self.t[k][rhs]).then(self.basic[i].cmp(&self.basic[k])))
                .expect("a negative right-hand side exists");
            self.pivot(r, aux)?;
            match self.iterate()? {
                Run::Optimal => {}
                Run::Unbounded => unreachable!("auxiliary objective is bounded by 0"),
            }
            if self.t[self.m][self.rhs()].is_neg() {
                return Some(LpOutcome::Infeasible {
                    farkas: self.slack_multipliers().into_iter().map(|v| v.to_big()).collect(),
                });
            }
            self.drop_aux()?;
        }
        self.install_objective(&lp.c)?;
        Some(match self.iterate()? {
            Run::Unbounded => LpOutcome::Unbounded,
            Run::Optimal => {
                let det = self.det.to_big();
                let frac = |v: &T| BigRational::new(v.to_big(), det.clone());
                let rhs = self.rhs();
                let mut x = vec![BigRational::zero(); n];
                for (i, &l) in self.basic.iter().enumerate() {
                    if l < n {
                        x[l] = frac(&self.t[i][rhs]);
                    }
                }
                let dual = self.slack_multipliers().iter().map(frac).collect();
                LpOutcome::Optimal {
                    x,
                    value: frac(&self.t[self.m][rhs]),
                    dual,
                }
            }
        })
    }

    /// Objective-row entries under the slack columns, i.e. the dual values
    /// scaled by `det`; zero for basic slacks. Rows removed while dropping
    /// the auxiliary variable keep multiplier zero.
    fn slack_multipliers(&self) -> Vec<T> {
        let mut y = vec![T::nil(); self.original_rows()];
        for (j, &l) in self.nonbasic.iter().enumerate() {
            if l > self.n {
                y[l - self.n - 1] = self.t[self.m][j].clone();
            }
        }
        y
    }

    fn original_rows(&self) -> usize {
        self.basic
            .iter()
            .chain(&self.nonbasic)
            .filter(|&&l| l > self.n)
            .count()
    }

    fn drop_aux(&mut self) -> Option<()> {
        let n = self.n;
        if let Some(r) = self.basic.iter().position(|&l| l == n) {
            // degenerate: x0 = 0 is basic; pivot it out on any nonzero entry
            let s = (0..self.rhs())
                .filter(|&j| !self.t[r][j].is_nil())
                .min_by_key(|&j| self.nonbasic[j]);
            match s {
                Some(s) => self.pivot(r, s)?,
                None => {
                    // the row reads x0 = 0 and constrains nothing else
                    self.t.remove(r);
                    self.basic.remove(r);
                    self.m -= 1;
                }
            }
        }
        if let Some(col) = self.nonbasic.iter().position(|&l| l == n) {
            for row in &mut self.t {
                row.remove(col);
            }
            self.nonbasic.remove(col);
        }
        Some(())
    }

    fn install_objective(&mut self, c: &[BigInt]) -> Option<()> {
        let c: Vec<T> = c.iter().map(T::from_big).collect::<Option<_>>()?;
        let width = self.rhs() + 1;
        let mut obj = vec![T::nil(); width];
        for (i, &l) in self.basic.iter().enumerate() {
            if l < self.n && !c[l].is_nil() {
                for (j, o) in obj.iter_mut().enumerate() {
                    *o = o.add(&c[l].mul(&self.t[i][j])?)?;
                }
            }
        }
        for (j, &l) in self.nonbasic.iter().enumerate() {
            if l < self.n && !c[l].is_nil() {
                obj[j] = obj[j].sub(&c[l].mul(&self.det)?)?;
            }
        }
        let m = self.m;
        self.t[m] = obj;
        Some(())
    }
}
