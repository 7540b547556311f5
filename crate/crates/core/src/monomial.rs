//! Monomials of a fixed multidegree and radicals of monomial ideals.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{lp_feasible, primitive, Feasibility, LinearSystem};
use crate::graded::{DegreeMatrix, Multidegree};
use crate::polyhedral::h_representation;

/// Exponent vector of a monomial, one entry per generator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent(pub Vec<u64>);

impl Exponent {
    pub fn support(&self) -> Support {
        Support::new(self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i).collect())
    }

    pub fn degree(&self, q: &DegreeMatrix) -> Multidegree {
        let mut d = vec![0i64; q.pic_rank()];
        for (i, &e) in self.0.iter().enumerate() {
            for (dk, ck) in d.iter_mut().zip(q.column(i)) {
                *dk += ck * e as i64;
            }
        }
        d
    }
}

/// A set of generator indices (0-based internally, printed 1-based).
/// Ordered by cardinality, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Support(Vec<usize>);

impl Support {
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        Support(indices)
    }

    /// From 1-based indices as printed.
    pub fn from_one_based(indices: &[usize]) -> Self {
        Support::new(indices.iter().map(|i| i - 1).collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &Support) -> bool {
        self.0.iter().all(|i| other.0.binary_search(i).is_ok())
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    /// Indices in `0..n` not in the support.
    pub fn complement(&self, n: usize) -> Support {
        Support((0..n).filter(|i| !self.contains(*i)).collect())
    }

    fn from_mask(mask: u128) -> Self {
        Support((0..128).filter(|i| mask >> i & 1 == 1).collect())
    }

    /// Renders as a product of the given variable names, e.g. `a*b*c*x`.
    pub fn as_monomial(&self, names: &[&str]) -> String {
        self.0.iter().map(|&i| names[i]).collect::<Vec<_>>().join("*")
    }
}

impl Ord for Support {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Support {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_based().iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for Support {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

/// Minimal generators of a squarefree monomial ideal, kept as a canonically
/// sorted antichain of supports.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct SquarefreeIdeal {
    generators: Vec<Support>,
}

impl SquarefreeIdeal {
    /// Keeps the minimal supports only.
    pub fn from_supports<I: IntoIterator<Item = Support>>(supports: I) -> Self {
        let mut all: Vec<Support> = supports.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        all.sort();
        let mut generators: Vec<Support> = Vec::new();
        for s in all {
            if !generators.iter().any(|g| g.is_subset(&s)) {
                generators.push(s);
            }
        }
        SquarefreeIdeal { generators }
    }

    pub fn generators(&self) -> &[Support] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Whether the monomial with this support lies in the ideal.
    pub fn contains_support(&self, s: &Support) -> bool {
        self.generators.iter().any(|g| g.is_subset(s))
    }

    pub fn is_antichain(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| {
            self.generators.iter().enumerate().all(|(j, b)| i == j || !a.is_subset(b))
        })
    }
}

/// Heft for the grading: the supplied one if present, otherwise an integer
/// vector pairing to at least 1 with every column, found by exact LP.
pub fn resolve_heft(q: &DegreeMatrix, supplied: Option<&[i64]>) -> Result<Multidegree> {
    let heft = match supplied.or(q.heft()) {
        Some(h) => {
            if h.len() != q.pic_rank() {
                return Err(Error::Usage(format!("heft has length {}, expected {}", h.len(), q.pic_rank())));
            }
            h.to_vec()
        }
        None => derive_heft(q)?,
    };
    let positive = q.columns().iter().all(|c| c.iter().zip(&heft).map(|(a, b)| a * b).sum::<i64>() > 0);
    if !positive {
        return Err(Error::GradingNotPositive);
    }
    Ok(heft)
}

fn derive_heft(q: &DegreeMatrix) -> Result<Multidegree> {
    let mut sys = LinearSystem::new(q.pic_rank());
    for c in q.columns() {
        sys.ge(c.iter().map(|&x| BigRational::from_integer(x.into())).collect(), BigRational::one());
    }
    match lp_feasible(&sys) {
        Feasibility::Infeasible => Err(Error::GradingNotPositive),
        Feasibility::Feasible(h) => primitive(&h)
            .iter()
            .map(|x| x.to_i64().ok_or(Error::Overflow("heft derivation")))
            .collect(),
    }
}

struct Level {
    // e·col_i for each equality, f·col_i for each inequality of the cone
    // spanned by the columns after this one.
    equalities: Vec<(Vec<i128>, i128)>,
    inequalities: Vec<(Vec<i128>, i128)>,
    heft_pairing: i128,
}

/// Depth-first enumerator. At each variable the admissible exponent range is
/// the intersection of the heft budget with the bounds that keep the
/// residual degree inside the cone spanned by the remaining columns.
struct Enumerator {
    columns: Vec<Vec<i128>>,
    heft: Vec<i128>,
    levels: Vec<Level>,
}

fn to_i128(v: &[BigInt]) -> Result<Vec<i128>> {
    v.iter().map(|x| x.to_i128().ok_or(Error::Overflow("monomial enumeration"))).collect()
}

fn dot128(a: &[i128], b: &[i128]) -> Result<i128> {
    a.iter().zip(b).try_fold(0i128, |acc, (x, y)| {
        x.checked_mul(*y).and_then(|p| acc.checked_add(p)).ok_or(Error::Overflow("monomial enumeration"))
    })
}

impl Enumerator {
    fn new(q: &DegreeMatrix, heft: &[i64]) -> Result<Self> {
        let n = q.num_gens();
        let r = q.pic_rank();
        let columns: Vec<Vec<i128>> = q.columns().iter().map(|c| c.iter().map(|&x| x as i128).collect()).collect();
        let heft: Vec<i128> = heft.iter().map(|&x| x as i128).collect();
        let mut levels = Vec::with_capacity(n);
        for i in 0..n {
            let rest: Vec<Vec<BigInt>> =
                q.columns()[i + 1..].iter().map(|c| c.iter().map(|&x| BigInt::from(x)).collect()).collect();
            let h = h_representation(r, &rest);
            let pair = |rows: &[Vec<BigInt>]| -> Result<Vec<(Vec<i128>, i128)>> {
                rows.iter()
                    .map(|row| {
                        let v = to_i128(row)?;
                        let p = dot128(&v, &columns[i])?;
                        Ok((v, p))
                    })
                    .collect()
            };
            levels.push(Level {
                equalities: pair(&h.equalities)?,
                inequalities: pair(&h.inequalities)?,
                heft_pairing: dot128(&heft, &columns[i])?,
            });
        }
        Ok(Self { columns, heft, levels })
    }

    fn range(&self, i: usize, res: &[i128]) -> Result<Option<(i128, i128)>> {
        let level = &self.levels[i];
        let budget = dot128(&self.heft, res)?;
        if budget < 0 {
            return Ok(None);
        }
        let mut lo = 0i128;
        let mut hi = budget.div_euclid(level.heft_pairing);
        for (e, b) in &level.equalities {
            let a = dot128(e, res)?;
            if *b == 0 {
                if a != 0 {
                    return Ok(None);
                }
            } else {
                if a % b != 0 {
                    return Ok(None);
                }
                let x = a / b;
                lo = lo.max(x);
                hi = hi.min(x);
            }
        }
        for (f, b) in &level.inequalities {
            let a = dot128(f, res)?;
            match b.signum() {
                0 if a < 0 => return Ok(None),
                1 => hi = hi.min(a.div_euclid(*b)),
                -1 => lo = lo.max(-(a.div_euclid(-*b))),
                _ => {}
            }
        }
        Ok((lo <= hi).then_some((lo, hi)))
    }

    fn run<F: FnMut(&[u64])>(&self, d: &[i64], visit: &mut F) -> Result<()> {
        let mut res: Vec<i128> = d.iter().map(|&x| x as i128).collect();
        let mut exp = vec![0u64; self.columns.len()];
        self.dfs(0, &mut res, &mut exp, visit)
    }

    fn dfs<F: FnMut(&[u64])>(&self, i: usize, res: &mut [i128], exp: &mut [u64], visit: &mut F) -> Result<()> {
        if i == self.columns.len() {
            if res.iter().all(|&x| x == 0) {
                visit(exp);
            }
            return Ok(());
        }
        let Some((lo, hi)) = self.range(i, res)? else {
            return Ok(());
        };
        let col = &self.columns[i];
        for (rk, ck) in res.iter_mut().zip(col) {
            *rk -= lo * ck;
        }
        for x in lo..=hi {
            exp[i] = x as u64;
            self.dfs(i + 1, res, exp, visit)?;
            for (rk, ck) in res.iter_mut().zip(col) {
                *rk -= ck;
            }
        }
        for (rk, ck) in res.iter_mut().zip(col) {
            *rk += (hi + 1) * ck;
        }
        exp[i] = 0;
        Ok(())
    }
}

fn check_degree(q: &DegreeMatrix, d: &[i64]) -> Result<()> {
    if d.len() != q.pic_rank() {
        return Err(Error::Usage(format!("degree has length {}, expected {}", d.len(), q.pic_rank())));
    }
    Ok(())
}

/// Calls `visit` on every exponent of degree `d`, in lexicographic order.
pub fn for_each_monomial<F: FnMut(&[u64])>(
    q: &DegreeMatrix,
    d: &[i64],
    heft: Option<&[i64]>,
    mut visit: F,
) -> Result<()> {
    check_degree(q, d)?;
    let heft = resolve_heft(q, heft)?;
    Enumerator::new(q, &heft)?.run(d, &mut visit)
}

/// All exponents `e ≥ 0` with `Q·e = d`, sorted lexicographically.
pub fn monomials_of_degree(q: &DegreeMatrix, d: &[i64], heft: Option<&[i64]>) -> Result<Vec<Exponent>> {
    let mut out = Vec::new();
    for_each_monomial(q, d, heft, |e| out.push(Exponent(e.to_vec())))?;
    out.sort();
    Ok(out)
}

/// Minimal generators of the radical of the ideal generated by `ms`.
pub fn radical_of_monomials(ms: &[Exponent]) -> SquarefreeIdeal {
    SquarefreeIdeal::from_supports(ms.iter().map(Exponent::support))
}

/// Distinct supports of the monomials of degree `d`.
fn supports_of_degree(enumerator: &Enumerator, d: &[i64]) -> Result<BTreeSet<u128>> {
    let mut masks = BTreeSet::new();
    enumerator.run(d, &mut |e: &[u64]| {
        let mask = e.iter().enumerate().filter(|(_, &x)| x > 0).fold(0u128, |m, (i, _)| m | 1 << i);
        masks.insert(mask);
    })?;
    Ok(masks)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrrelevantRadical {
    pub ideal: SquarefreeIdeal,
    pub depth: usize,
    /// Whether depth `k + 1` gives the same antichain; `None` when the
    /// check was not requested.
    pub stable: Option<bool>,
    pub warning: Option<String>,
}

/// Radical of the ideal generated by all monomials of degrees `d, 2d, …, kd`.
/// With `check_stabilization` the computation is repeated at depth `k + 1`
/// and a mismatch is reported as a warning.
pub fn irrelevant_radical(
    q: &DegreeMatrix,
    d: &[i64],
    depth: usize,
    check_stabilization: bool,
) -> Result<IrrelevantRadical> {
    if depth == 0 {
        return Err(Error::Usage("saturation depth must be at least 1".into()));
    }
    check_degree(q, d)?;
    if q.num_gens() > 128 {
        return Err(Error::GuardExceeded(format!(
            "support tracking is limited to 128 generators, got {}",
            q.num_gens()
        )));
    }
    let heft = resolve_heft(q, None)?;
    let enumerator = Enumerator::new(q, &heft)?;
    let last = if check_stabilization { depth + 1 } else { depth };
    let mut per_degree = Vec::with_capacity(last);
    for j in 1..=last {
        let dj: Vec<i64> = d
            .iter()
            .map(|&x| x.checked_mul(j as i64).ok_or(Error::Overflow("degree scaling")))
            .collect::<Result<_>>()?;
        per_degree.push(supports_of_degree(&enumerator, &dj)?);
    }
    let ideal_up_to = |k: usize| {
        SquarefreeIdeal::from_supports(per_degree[..k].iter().flatten().map(|&m| Support::from_mask(m)))
    };
    let ideal = ideal_up_to(depth);
    let (stable, warning) = if check_stabilization {
        let next = ideal_up_to(depth + 1);
        let stable = next == ideal;
        let warning = (!stable).then(|| {
            format!(
                "irrelevant radical not stable: depth {depth} gives {} generators, depth {} gives {}",
                ideal.len(),
                depth + 1,
                next.len()
            )
        });
        (Some(stable), warning)
    } else {
        (None, None)
    };
    Ok(IrrelevantRadical { ideal, depth, stable, warning })
}
