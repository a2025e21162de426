use super::{chain, ln_choose, BoundReport, Constraint, ProbError, Relation};
use crate::graph::{enumerate_copies, Graph, PatternGraph};

/// `ln(1 - 3^{-3a})`; `-inf` at `a = 0`.
fn ln_one_minus_cube(a: u64) -> f64 {
    (-(3f64).powf(-3.0 * a as f64)).ln_1p()
}

/// Random-colouring bound on `K_n`, `n = ⌊(3/2)^{t/2}⌋`, for a `t`-set
/// missing a colour, followed by its simplifications down to
/// `3 e^t t^{-t} (3/2)^{t/2}`. The verdict is that of the last form.
pub fn clique_union_bound(t: u64) -> Result<BoundReport, ProbError> {
    if t < 5 {
        return Err(ProbError::InvalidParameter(format!("t = {t}, need t >= 5")));
    }
    let tf = t as f64;
    let ln_a = 0.5 * 1.5f64.ln();
    let n_real = (tf * ln_a).exp();
    let n = n_real.floor() as u64;
    let pairs = tf * (tf - 1.0) / 2.0;
    let ln3 = 3f64.ln();
    let ln23 = (2.0f64 / 3.0).ln();
    let exact = ln_choose(n, t) + ln3 + pairs * ln23;
    let stirling = ln3 + tf * ((n as f64).ln() + 1.0 - tf.ln()) + pairs * ln23;
    let expanded = ln3 + tf * tf * ln_a + tf - tf * tf.ln() + (-tf * tf / 2.0 + tf / 2.0) * 1.5f64.ln();
    let last = ln3 + tf - tf * tf.ln() + tf / 2.0 * 1.5f64.ln();
    let mut r = BoundReport::new("clique_union_bound", &[("t", tf), ("n", n as f64)], last);
    // The board size is rounded down, so the second step is an inequality.
    r.steps = chain(vec![
        ("C(n,t) * 3 * (2/3)^C(t,2)", exact, Relation::AtMost),
        ("3 * (n e / t)^t * (2/3)^C(t,2)", stirling, Relation::AtMost),
        ("3 * a^(t^2) * e^t * t^(-t) * (3/2)^(-t^2/2 + t/2)", expanded, Relation::Equal),
        ("3 * e^t * t^(-t) * (3/2)^(t/2)", last, Relation::BelowOne),
    ]);
    Ok(r)
}

fn regime(n: u64, a: u64, b: u64) -> Vec<Constraint> {
    let l = (n as f64).ln();
    let b_cap = n as f64 * l.powi(-5);
    vec![
        Constraint { name: "a >= 1".into(), holds: a >= 1, detail: format!("a = {a}") },
        Constraint {
            name: "a < ln ln n".into(),
            holds: (a as f64) < l.ln(),
            detail: format!("ln ln n = {:.6}", l.ln()),
        },
        Constraint {
            name: "b < n ln^-5 n".into(),
            holds: (b as f64) < b_cap,
            detail: format!("n ln^-5 n = {b_cap:.6}"),
        },
    ]
}

/// `C(n,a) C(n-a,b) (1 - 3^{-3a})^{⌊(n-a-b)/3⌋}`, evaluated exactly in log
/// space. The regime constraints are reported, not enforced.
pub fn tree_union_bound(n: u64, a: u64, b: u64) -> Result<BoundReport, ProbError> {
    if a.checked_add(b).is_none_or(|s| s > n) {
        return Err(ProbError::InvalidParameter(format!("a + b = {} exceeds n = {n}", a as u128 + b as u128)));
    }
    let mut r = BoundReport::new(
        "tree_union_bound",
        &[("n", n as f64), ("a", a as f64), ("b", b as f64)],
        tree_log(n, a, b),
    );
    if n >= 3 {
        r.constraints = regime(n, a, b);
    }
    Ok(r)
}

fn tree_log(n: u64, a: u64, b: u64) -> f64 {
    let k = (n - a - b) / 3;
    let tail = if k == 0 { 0.0 } else { k as f64 * ln_one_minus_cube(a) };
    ln_choose(n, a) + ln_choose(n - a, b) + tail
}

/// Every intermediate expression of the chain bounding the tree union bound
/// by `exp(n/4 (8 ln^-4 n - ln^{-3 ln 3} n)) < 1`, with each claimed step and
/// side condition checked numerically. Nothing is enforced.
pub fn appendix_chain_unchecked(n: u64, a: u64, b: u64) -> Result<BoundReport, ProbError> {
    if n < 3 {
        return Err(ProbError::InvalidParameter(format!("n = {n}, need n >= 3")));
    }
    if a.checked_add(b).is_none_or(|s| s > n) {
        return Err(ProbError::InvalidParameter(format!("a + b exceeds n = {n}")));
    }
    let nf = n as f64;
    let (af, bf) = (a as f64, b as f64);
    let l = nf.ln();
    let ll = l.ln();
    let ln3 = 3f64.ln();
    let cube = 3f64.powf(-3.0 * af);
    let exact = tree_log(n, a, b);
    let s1 = (af + bf) * l + nf / 4.0 * ln_one_minus_cube(a);
    let s2 = (af + bf) * l - cube * nf / 4.0;
    let s3 = (af + bf) * l - cube * nf / 4.0;
    let s4 = nf / 4.0 * (8.0 * l.powi(-4) - 3f64.powf(-3.0 * ll));
    let s5 = nf / 4.0 * (8.0 * l.powi(-4) - (-3.0 * ln3 * ll).exp());
    let s6 = nf / 4.0 * (8.0 * l.powi(-4) - l.powf(-3.0 * ln3));
    let mut r = BoundReport::new("appendix_chain", &[("n", nf), ("a", af), ("b", bf)], exact);
    r.steps = chain(vec![
        ("C(n,a) C(n-a,b) (1 - 3^(-3a))^floor((n-a-b)/3)", exact, Relation::AtMost),
        ("n^(a+b) (1 - 3^(-3a))^(n/4)", s1, Relation::AtMost),
        ("n^(a+b) exp(-3^(-3a) n/4)", s2, Relation::Equal),
        ("exp((a+b) ln n - 3^(-3a) n/4)", s3, Relation::AtMost),
        ("exp(n/4 (8 ln^-4 n - 3^(-3 ln ln n)))", s4, Relation::Equal),
        ("exp(n/4 (8 ln^-4 n - e^(-3 ln 3 ln ln n)))", s5, Relation::Equal),
        ("exp(n/4 (8 ln^-4 n - ln^(-3 ln 3) n))", s6, Relation::BelowOne),
    ]);
    let mut cs = regime(n, a, b);
    cs.push(Constraint {
        name: "a + b <= 2 n ln^-5 n".into(),
        holds: af + bf <= 2.0 * nf * l.powi(-5),
        detail: format!("2 n ln^-5 n = {:.6}", 2.0 * nf * l.powi(-5)),
    });
    cs.push(Constraint {
        name: "floor((n-a-b)/3) >= n/4".into(),
        holds: ((n - a - b) / 3) as f64 >= nf / 4.0,
        detail: format!("floor = {}, n/4 = {}", (n - a - b) / 3, nf / 4.0),
    });
    cs.push(Constraint {
        name: "4 > 3 ln 3".into(),
        holds: 4.0 > 3.0 * ln3,
        detail: format!("3 ln 3 = {:.6}", 3.0 * ln3),
    });
    r.constraints = cs;
    Ok(r)
}

/// As [`appendix_chain_unchecked`], but rejects parameters outside
/// `1 <= a < ln ln n`, `b < n ln^-5 n`, naming the failed constraint.
pub fn appendix_chain(n: u64, a: u64, b: u64) -> Result<BoundReport, ProbError> {
    if n < 3 {
        return Err(ProbError::Regime(format!("n = {n} is too small for ln ln n")));
    }
    if let Some(c) = regime(n, a, b).into_iter().find(|c| !c.holds) {
        return Err(ProbError::Regime(format!("{} fails ({})", c.name, c.detail)));
    }
    appendix_chain_unchecked(n, a, b)
}

fn chain_valid(n: u64, a: u64, b: u64) -> bool {
    appendix_chain_unchecked(n, a, b).is_ok_and(|r| r.chain_holds())
}

/// Smallest `n` (up to `10^18`) at which the whole chain, side conditions
/// included, holds for `(a, b)`. Found by doubling and bisection, so it
/// assumes validity persists above the first valid `n`; the answer is
/// re-checked at `n` and `n - 1`.
pub fn appendix_threshold(a: u64, b: u64) -> Option<u64> {
    const CAP: u64 = 1_000_000_000_000_000_000;
    let mut hi = 16u64.max(a + b);
    while !chain_valid(hi, a, b) {
        if hi >= CAP {
            return None;
        }
        hi = hi.saturating_mul(2).min(CAP);
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if chain_valid(mid, a, b) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (chain_valid(hi, a, b) && !chain_valid(hi - 1, a, b)).then_some(hi)
}

/// `C(n,2) * 2 * (8/9)^{n-2}` for `n >= 2`.
pub fn double_star_value(n: u64) -> Result<BoundReport, ProbError> {
    if n < 2 {
        return Err(ProbError::InvalidParameter("need n >= 2".into()));
    }
    let log = ln_choose(n, 2) + 2f64.ln() + (n - 2) as f64 * (8.0f64 / 9.0).ln();
    Ok(BoundReport::new("double_star", &[("n", n as f64)], log))
}

/// `n * C(n-1,2) * (4/3) * (8/9)^{n-3}` for `n >= 3`.
pub fn shared_leaf_value(n: u64) -> Result<BoundReport, ProbError> {
    if n < 3 {
        return Err(ProbError::InvalidParameter("need n >= 3".into()));
    }
    let log = (n as f64).ln() + ln_choose(n - 1, 2) + (4.0f64 / 3.0).ln() + (n - 3) as f64 * (8.0f64 / 9.0).ln();
    Ok(BoundReport::new("shared_leaf", &[("n", n as f64)], log))
}

const SWEEP_END: u64 = 100_000;

/// One more than the last `n <= SWEEP_END` at which the expression is at least 1.
fn threshold(start: u64, log: impl Fn(u64) -> f64) -> u64 {
    (start..=SWEEP_END).filter(|&n| log(n) >= 0.0).last().map_or(start, |n| n + 1)
}

pub fn double_star_threshold() -> u64 {
    threshold(2, |n| double_star_value(n).expect("n >= 2").log_value)
}

pub fn shared_leaf_threshold() -> u64 {
    threshold(3, |n| shared_leaf_value(n).expect("n >= 3").log_value)
}

/// Union bound on the probability that a uniform 3-colouring of `K_n` is not
/// polychromatic for `h`: copies times `3(2/3)^e - 3(1/3)^e`.
pub fn copy_union_bound(n: u64, h: &PatternGraph) -> Result<BoundReport, ProbError> {
    let e = h.edge_count();
    if e == 0 {
        return Err(ProbError::InvalidParameter("pattern needs an edge".into()));
    }
    if n > 16 {
        return Err(ProbError::InvalidParameter("copies are counted by enumeration; n <= 16".into()));
    }
    let copies = if h.vertex_count() > n as usize {
        0
    } else {
        enumerate_copies(h, &Graph::complete(n as usize)).count()
    };
    let ef = e as f64;
    let miss = 3.0 * (2.0f64 / 3.0).powf(ef) - 3.0 * (1.0f64 / 3.0).powf(ef);
    let log = (copies as f64).ln() + miss.ln();
    let mut r = BoundReport::new("copy_union_bound", &[("n", n as f64), ("copies", copies as f64)], log);
    r.expression = format!("copy_union_bound({})", h.label());
    Ok(r)
}
