//! The interval engine: local germs, the cone rule, global projective
//! minima over structured inputs, structural bounds, weight upper bounds,
//! liminal loci and the hyperplane restriction cross-check.
//!
//! Structured inputs are sums of monomials in pairwise disjoint variables.
//! For those, every singular point lies on a coordinate cell that the
//! enumeration below visits, the local value on a cell is a sum of monomial
//! germ values, and the global minimum is exact. Anything else falls back to
//! two-sided bounds that always contain the true value.

use super::{
    Combine, DerivationTrace, Error, ExtRat, MinExpBound, Result, RuleId,
};
use crate::hm::WeightSystem;
use crate::hodge::Arrangement;
use crate::parallel;
use crate::polycore::{
    dehomogenize, jacobian_at, translate, ts_components, Monomial, Point, Polynomial,
};
use crate::{rat_int, BigInt, Rat};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

const MAX_CELL_COMBOS: usize = 1 << 20;
const MAX_CONE_DEPTH: usize = 32;

/// Caller-supplied side information for global bounds.
#[derive(Debug, Clone, Default)]
pub struct Hints {
    /// Claimed singular points (projective, length `n+1`); each is verified
    /// before use and silently skipped when not singular.
    pub points: Vec<Point>,
    /// Claimed dimension of the projective singular locus.
    pub sing_dim: Option<SingDimHint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingDimHint {
    /// Asserted smooth: empty singular locus.
    Empty,
    Dim(u32),
}

/// Local minimal exponent of `f` at an affine point with `f(p) = 0`.
pub fn minexp_local(f: &Polynomial, p: &Point) -> Result<MinExpBound> {
    if f.is_zero() {
        return Err(crate::polycore::Error::ZeroPolynomial.into());
    }
    let g = translate(f, p)?;
    if !g.constant_term().is_zero() {
        return Err(Error::NotOnHypersurface);
    }
    germ_at_origin(&g, 0)
}

/// Minimal exponent at the cone point of a homogeneous polynomial:
/// `min{ alpha(X), (n+1)/d }`.
pub fn minexp_cone(f: &Polynomial) -> Result<MinExpBound> {
    minexp_cone_with_hints(f, &Hints::default())
}

pub fn minexp_cone_with_hints(f: &Polynomial, hints: &Hints) -> Result<MinExpBound> {
    let d = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    if d < 2 {
        return Err(Error::DegreeTooSmall(2));
    }
    cone_impl(f, hints, 0)
}

fn cone_impl(f: &Polynomial, hints: &Hints, depth: usize) -> Result<MinExpBound> {
    let d = f.homogeneous_degree().expect("checked homogeneous");
    let v = f.num_vars();
    let global = global_impl(f, hints, depth)?;
    let ratio = Rat::new(BigInt::from(v as i64), BigInt::from(d as i64));
    let ratio_leaf = DerivationTrace::exact_leaf(
        format!("multiplicity bound {v}/{d} at the cone point"),
        RuleId::MultiplicityUpper,
        ExtRat::Finite(ratio),
    );
    let node = DerivationTrace::node(
        "cone rule: min of projective global and (n+1)/d",
        RuleId::ConeFormula,
        Combine::Min,
        vec![global.trace, ratio_leaf],
    );
    Ok(MinExpBound::from_trace(node))
}

/// Global minimal exponent of the projective hypersurface `{f = 0}`.
pub fn minexp_global_projective(f: &Polynomial, hints: &Hints) -> Result<MinExpBound> {
    let d = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    if d < 1 {
        return Err(Error::DegreeTooSmall(1));
    }
    global_impl(f, hints, 0)
}

fn global_impl(f: &Polynomial, hints: &Hints, depth: usize) -> Result<MinExpBound> {
    if let Some(blocks) = structured_blocks(f) {
        let outcome = enumerate_cells(&blocks, f.num_vars())?;
        return Ok(match outcome {
            None => MinExpBound::smooth("no projective singular candidate cell: smooth"),
            Some(cells) => MinExpBound::from_trace(global_trace(&blocks, &cells)),
        });
    }
    structural_impl(f, hints, depth)
}

/// Lower bound `(n - dim Sing)/d` plus upper bounds from verified singular
/// hint points, for homogeneous inputs outside the structured class.
pub fn structural_bounds(f: &Polynomial, hints: &Hints) -> Result<MinExpBound> {
    if f.homogeneous_degree().is_none() {
        return Err(Error::NotHomogeneous);
    }
    structural_impl(f, hints, 0)
}

fn structural_impl(f: &Polynomial, hints: &Hints, _depth: usize) -> Result<MinExpBound> {
    let d = f.homogeneous_degree().expect("checked homogeneous") as i64;
    let n = f.num_vars() as i64 - 1;
    if let Some(SingDimHint::Empty) = hints.sing_dim {
        return Ok(MinExpBound::smooth("asserted smooth: empty singular locus"));
    }
    let s = match hints.sing_dim {
        Some(SingDimHint::Dim(s)) => (s as i64).min(n - 1),
        _ => n - 1,
    };
    let lo = Rat::new(BigInt::from(n - s), BigInt::from(d));
    let mut children = vec![DerivationTrace::leaf(
        format!("singular locus dimension {s}: alpha >= ({n} - {s})/{d}"),
        RuleId::SingDimLower,
        ExtRat::Finite(lo.clone()),
        ExtRat::Infinity,
    )];
    for p in &hints.points {
        if let Some(hi) = upper_bound_at_projective_point(f, p)? {
            children.push(DerivationTrace::leaf(
                format!("upper bound from hinted singular point {}", fmt_point(p)),
                RuleId::MultiplicityUpper,
                ExtRat::Finite(lo.clone()),
                hi,
            ));
        }
    }
    let node = DerivationTrace::node(
        "structural bounds",
        RuleId::SingDimLower,
        Combine::Intersect,
        children,
    );
    if node.lo > node.hi {
        return Err(Error::InconsistentBounds);
    }
    Ok(MinExpBound::from_trace(node))
}

/// Verify the point is singular on `{f = 0}` and return the `hi` of the
/// local germ bound there; `None` when the point is not singular.
fn upper_bound_at_projective_point(f: &Polynomial, p: &Point) -> Result<Option<ExtRat>> {
    let n = f.num_vars();
    if n < 2 {
        return Ok(None);
    }
    if p.coords.len() != n {
        return Err(crate::polycore::Error::DimensionMismatch {
            expected: n,
            got: p.coords.len(),
        }
        .into());
    }
    let chart = match p.coords.iter().rposition(|c| !c.is_zero()) {
        Some(j) => j,
        None => return Ok(None),
    };
    let (chart_poly, old_to_new) = dehomogenize(f, chart)?;
    let pivot = p.coords[chart].clone();
    let mut affine = vec![Rat::zero(); n - 1];
    for (old, slot) in old_to_new.iter().enumerate() {
        if let Some(new) = slot {
            affine[*new] = &p.coords[old] / &pivot;
        }
    }
    let apt = Point::affine(affine);
    let (value, grad) = jacobian_at(&chart_poly, &apt)?;
    if !value.is_zero() || grad.iter().any(|c| !c.is_zero()) {
        return Ok(None);
    }
    let local = minexp_local(&chart_poly, &apt)?;
    Ok(Some(local.hi))
}

fn fmt_point(p: &Point) -> String {
    let coords: Vec<String> = p.coords.iter().map(|c| c.to_string()).collect();
    if p.projective {
        format!("[{}]", coords.join(":"))
    } else {
        format!("({})", coords.join(","))
    }
}

/// Weighted upper bound `(Σ w_i) / wt_w(f at p)`; the point must be singular.
pub fn weight_upper_bound(f: &Polynomial, w: &WeightSystem, p: &Point) -> Result<Rat> {
    let n = f.num_vars();
    if w.entries().len() != n {
        return Err(crate::polycore::Error::DimensionMismatch {
            expected: n,
            got: w.entries().len(),
        }
        .into());
    }
    if w.entries().iter().any(|c| c < &Rat::zero()) || w.entries().iter().all(|c| c.is_zero()) {
        return Err(Error::InvalidWeight);
    }
    let (value, grad) = jacobian_at(f, p)?;
    if !value.is_zero() || grad.iter().any(|c| !c.is_zero()) {
        return Err(Error::SmoothPoint);
    }
    let g = translate(f, p)?;
    let wt = g
        .terms()
        .map(|(m, _)| {
            m.0.iter()
                .zip(w.entries())
                .fold(Rat::zero(), |acc, (&e, wi)| {
                    acc + wi * Rat::from(BigInt::from(e))
                })
        })
        .min()
        .expect("nonzero polynomial");
    if wt.is_zero() {
        return Err(Error::UninformativeWeight);
    }
    let total = w.entries().iter().fold(Rat::zero(), |acc, wi| acc + wi);
    Ok(total / wt)
}

/// The locus of points where the local minimal exponent attains the global
/// minimum, for structured homogeneous inputs: a union of projective
/// coordinate cells, maximal cells only.
pub fn liminal_locus_structured(f: &Polynomial) -> Result<Arrangement> {
    if f.homogeneous_degree().is_none() {
        return Err(Error::NotHomogeneous);
    }
    let blocks = structured_blocks(f).ok_or(Error::OutOfClass)?;
    let n = f.num_vars();
    match enumerate_cells(&blocks, n)? {
        None => Ok(Arrangement::empty(n - 1)),
        Some(cells) => {
            let sets: Vec<BTreeSet<usize>> = cells
                .minimizing
                .iter()
                .map(|c| c.iter().copied().collect())
                .collect();
            Arrangement::new(n - 1, sets).map_err(|_| Error::OutOfClass)
        }
    }
}

// ---------------------------------------------------------------------------
// germ analysis at the origin

fn germ_at_origin(g: &Polynomial, depth: usize) -> Result<MinExpBound> {
    debug_assert!(g.constant_term().is_zero());
    if g.min_degree() == Some(1) {
        return Ok(MinExpBound::smooth("nonzero gradient: smooth point"));
    }
    let decomp = ts_components(g)?;
    debug_assert!(decomp.constant.is_zero());
    let mut children = Vec::with_capacity(decomp.blocks.len());
    for block in &decomp.blocks {
        children.push(block_at_origin(&block.poly, &block.vars, depth)?.trace);
    }
    if children.len() == 1 {
        return Ok(MinExpBound::from_trace(children.pop().expect("one child")));
    }
    let node = DerivationTrace::node(
        format!("disjoint-variable sum of {} blocks", children.len()),
        RuleId::ThomSebastiani,
        Combine::Sum,
        children,
    );
    Ok(MinExpBound::from_trace(node))
}

fn block_at_origin(block: &Polynomial, vars: &[usize], depth: usize) -> Result<MinExpBound> {
    if block.min_degree() == Some(1) {
        return Ok(MinExpBound::smooth("block has nonzero gradient"));
    }
    // single monomial, or monomial times a unit
    if let Some(m) = single_monomial_up_to_unit(block) {
        let entries: Vec<(usize, u32)> = m
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i, e))
            .collect();
        return Ok(MinExpBound::from_trace(monomial_germ_trace(&entries)));
    }
    if block.homogeneous_degree() == Some(2) {
        let origin = Point::affine(vec![Rat::zero(); block.num_vars()]);
        let rank = crate::polycore::hessian_rank_at(block, &origin)?;
        debug_assert!(rank >= 1);
        let value = Rat::new(BigInt::from(rank as i64), BigInt::from(2));
        return Ok(MinExpBound::from_trace(DerivationTrace::exact_leaf(
            format!("quadratic form of rank {rank}: {rank}/2"),
            RuleId::ThomSebastiani,
            ExtRat::Finite(value),
        )));
    }
    if let Some(d) = block.homogeneous_degree() {
        if d >= 2 && depth < MAX_CONE_DEPTH {
            let compressed = compress_to_vars(block, vars);
            return cone_impl(&compressed, &Hints::default(), depth + 1);
        }
    }
    // out-of-class germ: multiplicity bounds on both sides
    let mu = block.min_degree().expect("nonzero block") as i64;
    debug_assert!(mu >= 2);
    let k = vars.len() as i64;
    let node = DerivationTrace::node(
        format!("multiplicity {mu} in {k} variables"),
        RuleId::MultiplicityLower,
        Combine::Intersect,
        vec![
            DerivationTrace::leaf(
                format!("lct lower bound 1/{mu}"),
                RuleId::MultiplicityLower,
                ExtRat::Finite(Rat::new(BigInt::one(), BigInt::from(mu))),
                ExtRat::Infinity,
            ),
            DerivationTrace::leaf(
                format!("multiplicity upper bound {k}/{mu}"),
                RuleId::MultiplicityUpper,
                ExtRat::Finite(Rat::new(BigInt::one(), BigInt::from(mu))),
                ExtRat::Finite(Rat::new(BigInt::from(k), BigInt::from(mu))),
            ),
        ],
    );
    Ok(MinExpBound::from_trace(node))
}

/// `Some(monomial)` when the block is a single monomial, possibly times a
/// polynomial unit (nonzero constant term after factoring out the content).
fn single_monomial_up_to_unit(block: &Polynomial) -> Option<Monomial> {
    if block.num_terms() == 1 {
        let (m, _) = block.terms().next().expect("one term");
        return Some(m.clone());
    }
    let content = block.content_monomial()?;
    if content.is_constant() {
        return None;
    }
    let q = block.div_monomial(&content)?;
    if q.constant_term().is_zero() {
        None
    } else {
        Some(content)
    }
}

/// Exact value of a monomial germ `prod x_i^{e_i}` (all listed variables
/// vanishing at the point, unit factors removed).
fn monomial_germ_trace(entries: &[(usize, u32)]) -> DerivationTrace {
    assert!(!entries.is_empty());
    let label = entries
        .iter()
        .map(|(v, e)| {
            if *e == 1 {
                format!("x{v}")
            } else {
                format!("x{v}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*");
    if entries.len() == 1 {
        let (_, e) = entries[0];
        if e == 1 {
            return DerivationTrace::exact_leaf(
                format!("{label}: smooth divisor"),
                RuleId::Smooth,
                ExtRat::Infinity,
            );
        }
        return DerivationTrace::exact_leaf(
            format!("{label}: 1/{e}"),
            RuleId::MonomialPower,
            ExtRat::Finite(Rat::new(BigInt::one(), BigInt::from(e as i64))),
        );
    }
    let max_e = entries.iter().map(|(_, e)| *e).max().expect("nonempty");
    if max_e == 1 {
        return DerivationTrace::exact_leaf(
            format!("{label}: reduced normal crossing"),
            RuleId::NormalCrossing,
            ExtRat::Finite(Rat::one()),
        );
    }
    // non-reduced monomial: the cone recursion bottoms out at 1/max_e,
    // which also beats the multiplicity ratio
    let degree: u32 = entries.iter().map(|(_, e)| *e).sum();
    let k = entries.len() as i64;
    let power_leaf = DerivationTrace::exact_leaf(
        format!("deepest chart x^{max_e}: 1/{max_e}"),
        RuleId::MonomialPower,
        ExtRat::Finite(Rat::new(BigInt::one(), BigInt::from(max_e as i64))),
    );
    let ratio_leaf = DerivationTrace::exact_leaf(
        format!("multiplicity bound {k}/{degree}"),
        RuleId::MultiplicityUpper,
        ExtRat::Finite(Rat::new(BigInt::from(k), BigInt::from(degree as i64))),
    );
    DerivationTrace::node(
        format!("{label}: monomial germ"),
        RuleId::ConeFormula,
        Combine::Min,
        vec![power_leaf, ratio_leaf],
    )
}

// ---------------------------------------------------------------------------
// structured global enumeration

/// A structured block: one monomial, with its positive exponents.
#[derive(Debug, Clone)]
struct MonoBlock {
    entries: Vec<(usize, u32)>,
}

/// `Some(blocks)` when every disjoint-variable component of `f` is a single
/// monomial (no constant term).
fn structured_blocks(f: &Polynomial) -> Option<Vec<MonoBlock>> {
    let decomp = ts_components(f).ok()?;
    if !decomp.constant.is_zero() {
        return None;
    }
    let mut blocks = Vec::with_capacity(decomp.blocks.len());
    for b in &decomp.blocks {
        if b.poly.num_terms() != 1 {
            return None;
        }
        let (m, _) = b.poly.terms().next().expect("one term");
        let entries = m
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i, e))
            .collect();
        blocks.push(MonoBlock { entries });
    }
    Some(blocks)
}

/// Minimal critical cells of one monomial block: singletons `{i}` with
/// exponent at least two, and all pairs. Any deeper critical stratum
/// realizes the value of one of these on a larger vanishing set.
fn block_generators(b: &MonoBlock) -> Vec<Vec<(usize, u32)>> {
    let mut gens = Vec::new();
    for &(v, e) in &b.entries {
        if e >= 2 {
            gens.push(vec![(v, e)]);
        }
    }
    for i in 0..b.entries.len() {
        for j in i + 1..b.entries.len() {
            gens.push(vec![b.entries[i], b.entries[j]]);
        }
    }
    gens
}

fn germ_value(entries: &[(usize, u32)]) -> Rat {
    let max_e = entries.iter().map(|(_, e)| *e).max().expect("nonempty");
    if entries.len() == 1 {
        Rat::new(BigInt::one(), BigInt::from(max_e as i64))
    } else if max_e == 1 {
        Rat::one()
    } else {
        Rat::new(BigInt::one(), BigInt::from(max_e as i64))
    }
}

struct CellOutcome {
    min_value: Rat,
    /// Vanishing sets of the minimizing cells, maximal cells only
    /// (inclusion-minimal vanishing sets), sorted.
    minimizing: Vec<Vec<usize>>,
    candidates: usize,
}

/// Enumerate all candidate singular cells (one generator per block, at least
/// one coordinate left free) and take the minimum of the summed germ values.
/// `None` means the candidate set is empty, i.e. the hypersurface is smooth.
fn enumerate_cells(blocks: &[MonoBlock], num_vars: usize) -> Result<Option<CellOutcome>> {
    assert!(num_vars <= 128, "bitmask-based enumeration");
    let gens: Vec<Vec<Vec<(usize, u32)>>> = blocks.iter().map(block_generators).collect();
    if gens.iter().any(|g| g.is_empty()) {
        return Ok(None);
    }
    let mut combos: usize = 1;
    for g in &gens {
        combos = combos.saturating_mul(g.len());
        if combos > MAX_CELL_COMBOS {
            return Err(Error::TooManyCells);
        }
    }
    let full: u128 = if num_vars == 128 {
        u128::MAX
    } else {
        (1u128 << num_vars) - 1
    };

    let values: Vec<Vec<Rat>> = gens
        .iter()
        .map(|g| g.iter().map(|cell| germ_value(cell)).collect())
        .collect();
    let masks: Vec<Vec<u128>> = gens
        .iter()
        .map(|g| {
            g.iter()
                .map(|cell| cell.iter().fold(0u128, |m, (v, _)| m | (1u128 << v)))
                .collect()
        })
        .collect();

    // branch over the first one or two blocks in parallel, explore the
    // rest sequentially; the prefix choice fixes the starting stacks
    let prefix_len = if gens.len() >= 2 { 2 } else { 1 };
    let mut prefixes: Vec<Vec<usize>> = Vec::new();
    for c0 in 0..gens[0].len() {
        if prefix_len == 2 {
            for c1 in 0..gens[1].len() {
                prefixes.push(vec![c0, c1]);
            }
        } else {
            prefixes.push(vec![c0]);
        }
    }
    let folded = parallel::map_reduce(
        prefixes,
        |prefix| {
            let mut best: Option<(Rat, Vec<u128>)> = None;
            let mask = prefix
                .iter()
                .enumerate()
                .fold(0u128, |m, (b, &c)| m | masks[b][c]);
            let sum = prefix
                .iter()
                .enumerate()
                .fold(Rat::zero(), |s, (b, &c)| s + &values[b][c]);
            explore(&masks, &values, prefix.len(), mask, &sum, full, &mut best);
            best
        },
        |a, b| match (a, b) {
            (None, x) | (x, None) => x,
            (Some((va, ca)), Some((vb, cb))) => {
                if va < vb {
                    Some((va, ca))
                } else if vb < va {
                    Some((vb, cb))
                } else {
                    let mut merged = ca;
                    merged.extend(cb);
                    Some((va, merged))
                }
            }
        },
    )
    .flatten();

    let Some((min_value, cell_masks)) = folded else {
        return Ok(None);
    };
    // deduplicate and keep only maximal cells (minimal vanishing sets);
    // a strictly smaller vanishing set has strictly smaller popcount, so
    // only earlier popcount groups can witness non-maximality
    let mut uniq: Vec<u128> = cell_masks;
    uniq.sort_by_key(|m| (m.count_ones(), *m));
    uniq.dedup();
    let mut maximal: Vec<u128> = Vec::new();
    for &m in &uniq {
        let covered = maximal
            .iter()
            .take_while(|o| o.count_ones() < m.count_ones())
            .any(|&o| (o & m) == o);
        if !covered {
            maximal.push(m);
        }
    }
    let minimizing = maximal
        .into_iter()
        .map(|m| (0..num_vars).filter(|&v| m & (1u128 << v) != 0).collect())
        .collect();
    Ok(Some(CellOutcome {
        min_value,
        minimizing,
        candidates: combos,
    }))
}

fn explore(
    masks: &[Vec<u128>],
    values: &[Vec<Rat>],
    level: usize,
    mask: u128,
    sum: &Rat,
    full: u128,
    best: &mut Option<(Rat, Vec<u128>)>,
) {
    if level == masks.len() {
        if mask == full {
            return; // every coordinate vanishes: projectively empty
        }
        match best {
            None => *best = Some((sum.clone(), vec![mask])),
            Some((bv, cells)) => {
                if sum < bv {
                    *best = Some((sum.clone(), vec![mask]));
                } else if sum == bv {
                    cells.push(mask);
                }
            }
        }
        return;
    }
    for c in 0..masks[level].len() {
        let next_sum = sum + &values[level][c];
        explore(
            masks,
            values,
            level + 1,
            mask | masks[level][c],
            &next_sum,
            full,
            best,
        );
    }
}

fn global_trace(blocks: &[MonoBlock], cells: &CellOutcome) -> DerivationTrace {
    let mut children = Vec::new();
    for vanish in cells.minimizing.iter().take(8) {
        let vanish_set: BTreeSet<usize> = vanish.iter().copied().collect();
        let mut parts = Vec::new();
        for b in blocks {
            let sub: Vec<(usize, u32)> = b
                .entries
                .iter()
                .copied()
                .filter(|(v, _)| vanish_set.contains(v))
                .collect();
            if !sub.is_empty() {
                parts.push(monomial_germ_trace(&sub));
            }
        }
        let label: Vec<String> = vanish.iter().map(|v| format!("x{v}")).collect();
        children.push(if parts.len() == 1 {
            parts.pop().expect("one part")
        } else {
            DerivationTrace::node(
                format!("cell {{{} = 0}}", label.join(" = ")),
                RuleId::ThomSebastiani,
                Combine::Sum,
                parts,
            )
        });
    }
    let node = DerivationTrace::node(
        format!(
            "global minimum over {} candidate cells ({} minimizing)",
            cells.candidates,
            cells.minimizing.len()
        ),
        RuleId::GlobalMin,
        Combine::Min,
        children,
    );
    debug_assert_eq!(node.lo, ExtRat::Finite(cells.min_value.clone()));
    node
}

fn compress_to_vars(block: &Polynomial, vars: &[usize]) -> Polynomial {
    let mut new_index = vec![usize::MAX; block.num_vars()];
    for (new, &old) in vars.iter().enumerate() {
        new_index[old] = new;
    }
    let mut out = Polynomial::zero(vars.len());
    for (m, c) in block.terms() {
        let mut exps = vec![0u32; vars.len()];
        for (old, &e) in m.0.iter().enumerate() {
            if e > 0 {
                exps[new_index[old]] = e;
            }
        }
        out.add_term(Monomial(exps), c.clone());
    }
    out
}

// ---------------------------------------------------------------------------
// hyperplane restriction probe

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProbeOutcome {
    /// Both sides exact and equal.
    Agree,
    /// At least one side is an interval; the intervals are compatible.
    Consistent,
    /// The computed intervals exclude each other: an engine bug.
    Violation,
    /// The random hyperplane was contained in the hypersurface.
    Degenerate,
}

#[derive(Debug, Clone)]
pub struct ProbeReport {
    pub seed: u64,
    /// Coefficients of the hyperplane `sum c_i x_i = 0`.
    pub hyperplane: Vec<Rat>,
    /// Bound for the restriction `f|_H` at the origin.
    pub restricted: Option<MinExpBound>,
    /// Bound for `min{alpha_0(f), n/d}`.
    pub formula: Option<MinExpBound>,
    pub outcome: ProbeOutcome,
}

/// Restrict to a seeded pseudorandom rational hyperplane through the origin
/// and compare `alpha_0(f|_H)` against `min{alpha_0(f), n/d}`. A violation
/// indicates a bug; agreement is evidence (the hyperplane might be
/// non-generic).
pub fn hyperplane_restriction_probe(f: &Polynomial, seed: u64) -> Result<ProbeReport> {
    let d = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    if d < 1 {
        return Err(Error::DegreeTooSmall(1));
    }
    let n = f.num_vars();
    assert!(n >= 2, "need at least two variables to restrict");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeffs: Vec<Rat>;
    loop {
        coeffs = (0..n)
            .map(|_| rat_int(rng.gen_range(-9i64..=9)))
            .collect();
        if coeffs.iter().any(|c| !c.is_zero()) {
            break;
        }
    }
    let pivot = coeffs.iter().rposition(|c| !c.is_zero()).expect("nonzero");

    // substitution x_pivot = -(1/c_pivot) * sum_{i != pivot} c_i x_i
    let mut new_index = vec![usize::MAX; n];
    let mut next = 0;
    for (i, slot) in new_index.iter_mut().enumerate() {
        if i != pivot {
            *slot = next;
            next += 1;
        }
    }
    let mut pivot_image = Polynomial::zero(n - 1);
    for i in 0..n {
        if i == pivot || coeffs[i].is_zero() {
            continue;
        }
        let c = -&coeffs[i] / &coeffs[pivot];
        pivot_image.add_term(Monomial::var(n - 1, new_index[i]), c);
    }
    let mut restricted = Polynomial::zero(n - 1);
    for (m, c) in f.terms() {
        let mut term = Polynomial::constant(n - 1, c.clone());
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let image = if i == pivot {
                pivot_image.clone()
            } else {
                Polynomial::var(n - 1, new_index[i])
            };
            term = term.mul(&image.pow(e));
        }
        restricted = restricted.add(&term);
    }
    if restricted.is_zero() {
        return Ok(ProbeReport {
            seed,
            hyperplane: coeffs,
            restricted: None,
            formula: None,
            outcome: ProbeOutcome::Degenerate,
        });
    }

    let lhs = germ_at_origin(&restricted, 0)?;
    let cone = germ_at_origin(f, 0)?;
    let cutoff = ExtRat::Finite(Rat::new(
        BigInt::from((n - 1) as i64),
        BigInt::from(d as i64),
    ));
    let cutoff_leaf = DerivationTrace::exact_leaf(
        format!("restriction cutoff {}/{}", n - 1, d),
        RuleId::HyperplaneProbe,
        cutoff,
    );
    let rhs = MinExpBound::from_trace(DerivationTrace::node(
        "min of the cone value and the restriction cutoff",
        RuleId::HyperplaneProbe,
        Combine::Min,
        vec![cone.trace, cutoff_leaf],
    ));

    let outcome = if lhs.is_exact() && rhs.is_exact() {
        if lhs.lo == rhs.lo {
            ProbeOutcome::Agree
        } else {
            ProbeOutcome::Violation
        }
    } else if lhs.lo <= rhs.hi && rhs.lo <= lhs.hi {
        ProbeOutcome::Consistent
    } else {
        ProbeOutcome::Violation
    };
    Ok(ProbeReport {
        seed,
        hyperplane: coeffs,
        restricted: Some(lhs),
        formula: Some(rhs),
        outcome,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minexp::replay;
    use crate::polycore::parse_polynomial;
    use crate::{rat, rat_int};

    fn origin(n: usize) -> Point {
        Point::affine(vec![Rat::zero(); n])
    }

    fn exact_value(b: &MinExpBound) -> Rat {
        assert_exact(b);
        b.lo.as_finite().expect("finite").clone()
    }

    fn assert_exact(b: &MinExpBound) {
        assert!(b.is_exact(), "expected exact bound, got {b}");
        assert!(replay(&b.trace), "trace must replay");
    }

    #[test]
    fn node_in_four_variables() {
        let f = parse_polynomial("x0^2 + x1^2 + x2^2 + x3^2", 4).unwrap();
        let b = minexp_local(&f, &origin(4)).unwrap();
        assert_eq!(exact_value(&b), rat_int(2));
    }

    #[test]
    fn cone_block_plus_quadric() {
        let f =
            parse_polynomial("x0^3 + x1^3 + x2^3 + x3^3 + x4^3 + x5^3 + x6*x7", 8).unwrap();
        let b = minexp_local(&f, &origin(8)).unwrap();
        assert_eq!(exact_value(&b), rat_int(3));
    }

    #[test]
    fn a5_threefold_suspension() {
        let f = parse_polynomial("x0^6 + x1^2 + x2^2 + x3^2", 4).unwrap();
        let b = minexp_local(&f, &origin(4)).unwrap();
        assert_eq!(exact_value(&b), rat(5, 3));
    }

    #[test]
    fn cone_examples() {
        // Fermat cubic in 9 variables: min{inf, 3}
        let f = parse_polynomial(
            "x0^3+x1^3+x2^3+x3^3+x4^3+x5^3+x6^3+x7^3+x8^3",
            9,
        )
        .unwrap();
        let b = minexp_cone(&f).unwrap();
        assert_eq!(exact_value(&b), rat_int(3));

        let f = parse_polynomial("x0*x1*x2", 3).unwrap();
        let b = minexp_cone(&f).unwrap();
        assert_eq!(exact_value(&b), rat_int(1));

        let f = parse_polynomial("x0^2*x1", 2).unwrap();
        let b = minexp_cone(&f).unwrap();
        assert_eq!(exact_value(&b), rat(1, 2));
    }

    #[test]
    fn global_projective_examples() {
        let case2 = parse_polynomial("x0^3+x1^3+x2^3+x3^3+x4^3+x5^3+x6*x7*x8", 9).unwrap();
        let b = minexp_global_projective(&case2, &Hints::default()).unwrap();
        assert_eq!(exact_value(&b), rat_int(3));

        let fermat = parse_polynomial(
            "x0^3+x1^3+x2^3+x3^3+x4^3+x5^3+x6^3+x7^3+x8^3",
            9,
        )
        .unwrap();
        let b = minexp_global_projective(&fermat, &Hints::default()).unwrap();
        assert_eq!(b.lo, ExtRat::Infinity);
        assert!(b.is_exact());
    }

    #[test]
    fn liminal_loci() {
        let case4 = parse_polynomial("x0*x1*x2+x3*x4*x5+x6*x7*x8", 9).unwrap();
        let arr = liminal_locus_structured(&case4).unwrap();
        assert_eq!(arr.cells.len(), 27);
        assert!(arr.cells.iter().all(|c| c.len() == 6));
        assert_eq!(arr.dim(), Some(2));

        let case2 = parse_polynomial("x0^3+x1^3+x2^3+x3^3+x4^3+x5^3+x6*x7*x8", 9).unwrap();
        let arr = liminal_locus_structured(&case2).unwrap();
        assert_eq!(arr.cells.len(), 3);
        assert!(arr.cells.iter().all(|c| c.len() == 8));

        let fermat = parse_polynomial("x0^3+x1^3+x2^3", 3).unwrap();
        let arr = liminal_locus_structured(&fermat).unwrap();
        assert!(arr.is_empty());
    }

    #[test]
    fn weight_upper_bound_examples() {
        let f = parse_polynomial("x0^2*x1", 2).unwrap();
        let w = WeightSystem::new(vec![rat_int(1), rat_int(1)]);
        let b = weight_upper_bound(&f, &w, &origin(2)).unwrap();
        assert_eq!(b, rat(2, 3));
        let engine = minexp_local(&f, &origin(2)).unwrap();
        assert!(ExtRat::Finite(b) >= engine.lo);

        let f = parse_polynomial("x0^2 + x1^2", 2).unwrap();
        let w = WeightSystem::new(vec![rat_int(1), rat_int(1)]);
        assert_eq!(weight_upper_bound(&f, &w, &origin(2)).unwrap(), rat_int(1));

        let f = parse_polynomial("x0^3 + x1^3 + x2^3", 3).unwrap();
        let w = WeightSystem::new(vec![rat_int(1), rat_int(1), rat_int(1)]);
        assert_eq!(weight_upper_bound(&f, &w, &origin(3)).unwrap(), rat_int(1));
    }

    #[test]
    fn weight_bound_requires_singular_point() {
        let f = parse_polynomial("x0^2 + x1", 2).unwrap();
        let w = WeightSystem::new(vec![rat_int(1), rat_int(1)]);
        assert_eq!(
            weight_upper_bound(&f, &w, &origin(2)),
            Err(Error::SmoothPoint)
        );
    }

    #[test]
    fn structural_bounds_with_hint() {
        // cubic in P^8 with a zero-dimensional singular locus
        let f = parse_polynomial("x0^3+x1^3+x2^3+x3^3+x4^3+x5^3+x6*x7*x8", 9).unwrap();
        let hints = Hints {
            points: vec![],
            sing_dim: Some(SingDimHint::Dim(0)),
        };
        let b = structural_bounds(&f, &hints).unwrap();
        assert_eq!(b.lo, ExtRat::Finite(rat(8, 3)));
    }

    #[test]
    fn probe_on_simple_inputs() {
        // x0^2 restricted to a generic line stays a double point
        let f = parse_polynomial("x0^2", 2).unwrap();
        let report = hyperplane_restriction_probe(&f, 1).unwrap();
        assert!(matches!(
            report.outcome,
            ProbeOutcome::Agree | ProbeOutcome::Consistent
        ));
    }
}
