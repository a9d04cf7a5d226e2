//! Brute-force cohomology for tiny inputs, independent of the linear algebra.
//!
//! Cocycles are enumerated by depth-first search over cochain values, checking
//! each cocycle identity as soon as all the values it mentions are assigned.
//! Coboundaries are enumerated directly. The structure of the quotient is read
//! off from the counts `#{z : p^j z is a coboundary}`, which determine the
//! elementary divisors of a finite abelian group.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::factorize;
use crate::gmodules::GModule;
use crate::groups::Subgroup;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Cap on search nodes (partial assignments tried) and enumerated cochains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_functions: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_functions: DEFAULT_BUDGET }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    BudgetExceeded { budget: u64 },
    SubgroupMismatch,
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::BudgetExceeded { budget } => write!(f, "oracle budget of {budget} exceeded"),
            OracleError::SubgroupMismatch => write!(f, "subgroup belongs to a different group"),
        }
    }
}

impl core::error::Error for OracleError {}

/// `M` as a finite set with lookup tables for addition and the action.
struct Tables {
    size: usize,
    zero: usize,
    add: Vec<usize>,
    neg: Vec<usize>,
    act: Vec<usize>,
}

impl Tables {
    fn new(module: &GModule) -> Tables {
        let orders = module.orders();
        let size = orders.iter().map(|&d| d as usize).product::<usize>();
        let elements: Vec<Vec<u64>> = (0..size)
            .map(|mut k| {
                let mut v = vec![0u64; orders.len()];
                for (slot, &d) in v.iter_mut().zip(orders).rev() {
                    *slot = (k % d as usize) as u64;
                    k /= d as usize;
                }
                v
            })
            .collect();
        let index = |v: &[u64]| v.iter().zip(orders).fold(0usize, |acc, (&x, &d)| acc * d as usize + x as usize);
        let mut add = vec![0; size * size];
        let mut neg = vec![0; size];
        for a in 0..size {
            neg[a] = index(&module.sub(&vec![0; orders.len()], &elements[a]));
            for b in 0..size {
                add[a * size + b] = index(&module.add(&elements[a], &elements[b]));
            }
        }
        let n = module.group().order();
        let mut act = vec![0; n * size];
        for g in 0..n {
            for a in 0..size {
                act[g * size + a] = index(&module.act(g, &elements[a]));
            }
        }
        Tables { size, zero: 0, add, neg, act }
    }

    #[inline]
    fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b]
    }

    #[inline]
    fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg[b])
    }

    #[inline]
    fn act(&self, g: usize, a: usize) -> usize {
        self.act[g * self.size + a]
    }

    fn scale(&self, k: u64, a: usize) -> usize {
        // double-and-add
        let (mut acc, mut base, mut k) = (self.zero, a, k);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }
}

type Cochain = Vec<usize>;

struct Search<'a, F: Fn(usize, &[usize]) -> bool> {
    order: Vec<usize>,
    triggers: Vec<Vec<usize>>,
    check: F,
    card: usize,
    budget: u64,
    nodes: u64,
    assignment: Vec<usize>,
    out: &'a mut Vec<Cochain>,
}

impl<F: Fn(usize, &[usize]) -> bool> Search<'_, F> {
    fn run(&mut self, depth: usize) -> Result<(), OracleError> {
        if depth == self.order.len() {
            self.out.push(self.assignment.clone());
            return Ok(());
        }
        let var = self.order[depth];
        for value in 0..self.card {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(OracleError::BudgetExceeded { budget: self.budget });
            }
            self.assignment[var] = value;
            if self.triggers[depth].iter().all(|&c| (self.check)(c, &self.assignment)) {
                self.run(depth + 1)?;
            }
        }
        Ok(())
    }
}

/// All assignments of `nvars` variables with values in `0..card` satisfying
/// every constraint; constraint `c` mentions the variables `vars[c]`.
fn solve_constraints(
    nvars: usize,
    vars: &[Vec<usize>],
    card: usize,
    check: impl Fn(usize, &[usize]) -> bool,
    budget: u64,
) -> Result<Vec<Cochain>, OracleError> {
    // Greedy order: next variable is the one completing the most constraints.
    let mut placed = vec![false; nvars];
    let mut order = Vec::with_capacity(nvars);
    for _ in 0..nvars {
        let best = (0..nvars)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let done = vars
                    .iter()
                    .filter(|c| c.contains(&v) && c.iter().all(|&w| w == v || placed[w]))
                    .count();
                (done, core::cmp::Reverse(v))
            })
            .expect("unplaced variable");
        placed[best] = true;
        order.push(best);
    }
    let mut position = vec![0; nvars];
    for (p, &v) in order.iter().enumerate() {
        position[v] = p;
    }
    let mut triggers = vec![Vec::new(); nvars];
    let assignment = vec![0usize; nvars];
    for (c, vs) in vars.iter().enumerate() {
        match vs.iter().map(|&v| position[v]).max() {
            Some(p) => triggers[p].push(c),
            None => {
                if !check(c, &assignment) {
                    return Ok(Vec::new());
                }
            }
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        out.push(Vec::new());
        return Ok(out);
    }
    let mut search = Search { order, triggers, check, card, budget, nodes: 0, assignment, out: &mut out };
    search.run(0)?;
    Ok(out)
}

/// Invariant factors of `span / B` where `elements` is a subgroup of
/// cochains containing the subgroup `b`.
fn quotient_structure(t: &Tables, elements: &[Cochain], b: &BTreeSet<Cochain>) -> Vec<u64> {
    assert_eq!(elements.len() % b.len(), 0, "coboundaries form a subgroup of cocycles");
    let order = (elements.len() / b.len()) as u64;
    let mut elementary: Vec<u64> = Vec::new();
    for (p, _) in factorize(order) {
        // c_j = log_p #{x in H : p^j x = 0}
        let mut logs = vec![0u32];
        let mut pj = 1u64;
        loop {
            pj *= p;
            let killed = elements
                .iter()
                .filter(|z| {
                    let scaled: Cochain = z.iter().map(|&x| t.scale(pj, x)).collect();
                    b.contains(&scaled)
                })
                .count() as u64
                / b.len() as u64;
            let mut log = 0;
            let mut k = killed;
            while k % p == 0 && k > 1 {
                k /= p;
                log += 1;
            }
            let last = *logs.last().expect("nonempty");
            logs.push(log);
            if log == last {
                break;
            }
        }
        // the number of cyclic factors of order ≥ p^j is c_j − c_{j−1}
        let counts: Vec<u32> = logs.windows(2).map(|w| w[1] - w[0]).collect();
        for (j, &at_least) in counts.iter().enumerate() {
            let at_least_next = counts.get(j + 1).copied().unwrap_or(0);
            for _ in 0..(at_least - at_least_next) {
                elementary.push(p.pow(j as u32 + 1));
            }
        }
    }
    invariant_factors_from_elementary(elementary)
}

fn invariant_factors_from_elementary(elementary: Vec<u64>) -> Vec<u64> {
    // group prime powers by prime, largest first, and multiply across primes
    let mut by_prime: Vec<(u64, Vec<u64>)> = Vec::new();
    for q in elementary {
        let p = factorize(q)[0].0;
        match by_prime.iter_mut().find(|(r, _)| *r == p) {
            Some((_, v)) => v.push(q),
            None => by_prime.push((p, vec![q])),
        }
    }
    let len = by_prime.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for (_, mut powers) in by_prime {
        powers.sort_unstable_by(|a, b| b.cmp(a));
        for (k, q) in powers.into_iter().enumerate() {
            out[len - 1 - k] *= q;
        }
    }
    out
}

fn h1_cocycles(module: &GModule, t: &Tables, budget: u64) -> Result<Vec<Cochain>, OracleError> {
    let g = module.group();
    let n = g.order();
    let mut vars = Vec::new();
    let mut triples = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let mut vs = vec![a, b, g.mul(a, b)];
            vs.sort_unstable();
            vs.dedup();
            vars.push(vs);
            triples.push((a, b, g.mul(a, b)));
        }
    }
    // f(ab) = a·f(b) + f(a)
    let check = |c: usize, f: &[usize]| {
        let (a, b, ab) = triples[c];
        f[ab] == t.add(t.act(a, f[b]), f[a])
    };
    solve_constraints(n, &vars, t.size, check, budget)
}

fn h1_coboundaries(module: &GModule, t: &Tables) -> BTreeSet<Cochain> {
    let n = module.group().order();
    (0..t.size).map(|m| (0..n).map(|g| t.sub(t.act(g, m), m)).collect()).collect()
}

/// `H^1(G, M)` by enumeration of all cocycles `G → M`.
pub fn brute_h1(module: &GModule, budget: OracleBudget) -> Result<Vec<u64>, OracleError> {
    let t = Tables::new(module);
    let z = h1_cocycles(module, &t, budget.max_functions)?;
    let b = h1_coboundaries(module, &t);
    Ok(quotient_structure(&t, &z, &b))
}

/// `H^2(G, M)` by enumeration of normalized cocycles (`f(1, h) = f(g, 1) = 0`).
pub fn brute_h2(module: &GModule, budget: OracleBudget) -> Result<Vec<u64>, OracleError> {
    let t = Tables::new(module);
    let g = module.group();
    let n = g.order();
    if n == 1 {
        return Ok(Vec::new());
    }
    // variable (a, b) with a, b ≠ 1 sits at (a − 1)(n − 1) + (b − 1)
    let var = |a: usize, b: usize| -> Option<usize> { (a != 0 && b != 0).then(|| (a - 1) * (n - 1) + (b - 1)) };
    let nvars = (n - 1) * (n - 1);
    let mut vars = Vec::new();
    let mut quads = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let terms = [var(b, c), var(g.mul(a, b), c), var(a, g.mul(b, c)), var(a, b)];
                let mut vs: Vec<usize> = terms.iter().flatten().copied().collect();
                vs.sort_unstable();
                vs.dedup();
                vars.push(vs);
                quads.push((a, b, c, terms));
            }
        }
    }
    let value = |f: &[usize], v: Option<usize>| v.map_or(t.zero, |i| f[i]);
    // a·f(b,c) − f(ab,c) + f(a,bc) − f(a,b) = 0
    let check = |k: usize, f: &[usize]| {
        let (a, _, _, terms) = quads[k];
        let lhs = t.add(t.act(a, value(f, terms[0])), value(f, terms[2]));
        let rhs = t.add(value(f, terms[1]), value(f, terms[3]));
        lhs == rhs
    };
    let z = solve_constraints(nvars, &vars, t.size, check, budget.max_functions)?;

    // coboundaries of normalized 1-cochains
    let total = (t.size as u64).checked_pow(n as u32 - 1);
    if total.is_none_or(|c| c > budget.max_functions) {
        return Err(OracleError::BudgetExceeded { budget: budget.max_functions });
    }
    let mut b = BTreeSet::new();
    let mut f = vec![0usize; n];
    for mut k in 0..total.expect("checked") as usize {
        for slot in f[1..].iter_mut() {
            *slot = k % t.size;
            k /= t.size;
        }
        let mut df = vec![0usize; nvars];
        for a in 1..n {
            for c in 1..n {
                df[var(a, c).expect("nonzero")] = t.add(t.sub(t.act(a, f[c]), f[g.mul(a, c)]), f[a]);
            }
        }
        b.insert(df);
    }
    Ok(quotient_structure(&t, &z, &b))
}

/// Classes in `H^1(G, M)` that restrict to coboundaries on every subgroup
/// of `family`, found by filtering the cocycles directly.
pub fn brute_sha(module: &GModule, family: &[Subgroup], budget: OracleBudget) -> Result<Vec<u64>, OracleError> {
    if family.iter().any(|h| **h.parent() != **module.group()) {
        return Err(OracleError::SubgroupMismatch);
    }
    let t = Tables::new(module);
    let z = h1_cocycles(module, &t, budget.max_functions)?;
    let b = h1_coboundaries(module, &t);
    let local: Vec<BTreeSet<Cochain>> = family
        .iter()
        .map(|h| {
            (0..t.size)
                .map(|m| h.elements().iter().map(|&x| t.sub(t.act(x, m), m)).collect())
                .collect()
        })
        .collect();
    let kept: Vec<Cochain> = z
        .into_iter()
        .filter(|f| {
            family.iter().zip(&local).all(|(h, bh)| {
                let restricted: Cochain = h.elements().iter().map(|&x| f[x]).collect();
                bh.contains(&restricted)
            })
        })
        .collect();
    Ok(quotient_structure(&t, &kept, &b))
}
