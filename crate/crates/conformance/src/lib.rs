//! Straightforward reference implementations over raw digit arrays.
//!
//! A table of order `n` is `n²` row-major digits and a map is `n` digits;
//! digits `0..n` are elements and the digit `n` is "undefined". Nothing here
//! shares code with `hom-magma`, so its results can serve as an oracle for
//! that crate.

pub type Digits = Vec<u8>;

/// Order of a table from its cell count.
pub fn table_order(t: &[u8]) -> usize {
    let n = (t.len() as f64).sqrt().round() as usize;
    assert_eq!(n * n, t.len(), "not a square table");
    n
}

/// All digit strings of `len` digits in `0..base`, in lexicographic order.
pub fn all_words(len: usize, base: u8) -> Vec<Digits> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..base).map(move |d| {
                    let mut w = w.clone();
                    w.push(d);
                    w
                })
            })
            .collect();
    }
    out
}

pub fn all_tables(n: usize, totals_only: bool) -> Vec<Digits> {
    let base = if totals_only { n } else { n + 1 };
    all_words(n * n, base as u8)
}

pub fn all_maps(n: usize) -> Vec<Digits> {
    all_words(n, n as u8 + 1)
}

/// Parses the shorthand: symbols `1..=n` are elements, `n+1` is undefined.
pub fn parse(code: &str) -> Digits {
    code.bytes().map(|b| b - b'1').collect()
}

pub fn show(d: &[u8]) -> String {
    d.iter().map(|&x| char::from(b'1' + x)).collect()
}

/// Product `x·y`, with `n` (undefined) absorbing.
fn mul(t: &[u8], n: u8, x: u8, y: u8) -> u8 {
    if x == n || y == n {
        n
    } else {
        t[x as usize * n as usize + y as usize]
    }
}

fn ap(a: &[u8], n: u8, x: u8) -> u8 {
    if x == n {
        n
    } else {
        a[x as usize]
    }
}

/// Left and right sides of `α(xy) ~ α(x)α(y)` for every pair.
fn endo_pairs(t: &[u8], a: &[u8]) -> Vec<(u8, u8)> {
    let n = table_order(t) as u8;
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            out.push((
                ap(a, n, mul(t, n, x, y)),
                mul(t, n, ap(a, n, x), ap(a, n, y)),
            ));
        }
    }
    out
}

/// Left and right sides of `α(x)(yz) ~ (xy)α(z)` for every triple.
fn hom_assoc_triples(t: &[u8], a: &[u8]) -> Vec<(u8, u8)> {
    let n = table_order(t) as u8;
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                out.push((
                    mul(t, n, ap(a, n, x), mul(t, n, y, z)),
                    mul(t, n, mul(t, n, x, y), ap(a, n, z)),
                ));
            }
        }
    }
    out
}

fn agree_where_defined(sides: &[(u8, u8)], n: u8) -> bool {
    sides.iter().all(|&(l, r)| l == n || r == n || l == r)
}

pub fn weak_partial_endo(t: &[u8], a: &[u8]) -> bool {
    agree_where_defined(&endo_pairs(t, a), table_order(t) as u8)
}

pub fn partial_endo(t: &[u8], a: &[u8]) -> bool {
    endo_pairs(t, a).iter().all(|(l, r)| l == r)
}

pub fn endo(t: &[u8], a: &[u8]) -> bool {
    let n = table_order(t) as u8;
    t.iter().all(|&c| c < n) && a.iter().all(|&c| c < n) && partial_endo(t, a)
}

pub fn partial_hom_assoc(t: &[u8], a: &[u8]) -> bool {
    agree_where_defined(&hom_assoc_triples(t, a), table_order(t) as u8)
}

pub fn hom_assoc(t: &[u8], a: &[u8]) -> bool {
    hom_assoc_triples(t, a).iter().all(|(l, r)| l == r)
}

pub fn identity(n: usize) -> Digits {
    (0..n as u8).collect()
}

pub fn partially_assoc(t: &[u8]) -> bool {
    partial_hom_assoc(t, &identity(table_order(t)))
}

pub fn assoc(t: &[u8]) -> bool {
    hom_assoc(t, &identity(table_order(t)))
}

/// All permutations of `0..n` (Heap's algorithm; order unspecified).
pub fn permutations(n: usize) -> Vec<Digits> {
    fn heap(k: usize, p: &mut Digits, out: &mut Vec<Digits>) {
        if k <= 1 {
            out.push(p.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, p, out);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            p.swap(j, k - 1);
        }
    }
    let mut p = identity(n);
    let mut out = Vec::new();
    heap(n, &mut p, &mut out);
    out
}

/// The table `t'` with `t'(p x, p y) = p(t(x, y))`.
pub fn relabel(t: &[u8], p: &[u8]) -> Digits {
    let n = table_order(t);
    let mut out = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            let v = t[x * n + y];
            let img = if v as usize == n { v } else { p[v as usize] };
            out[p[x] as usize * n + p[y] as usize] = img;
        }
    }
    out
}

/// `p ∘ a ∘ p⁻¹`.
pub fn conjugate(a: &[u8], p: &[u8]) -> Digits {
    let n = a.len() as u8;
    let mut out = vec![n; a.len()];
    for x in 0..a.len() {
        out[p[x] as usize] = if a[x] == n { n } else { p[a[x] as usize] };
    }
    out
}

/// Least relabelling under digit order (undefined is the largest digit).
pub fn canonical(t: &[u8]) -> Digits {
    permutations(table_order(t))
        .iter()
        .map(|p| relabel(t, p))
        .min()
        .expect("at least one permutation")
}

pub fn isomorphic(t: &[u8], u: &[u8]) -> bool {
    t.len() == u.len()
        && permutations(table_order(t))
            .iter()
            .any(|p| relabel(t, p) == u)
}

/// Number of orbits via the average number of tables each permutation
/// fixes, counting fixed tables one by one.
pub fn burnside_by_fixed_tables(n: usize, totals_only: bool) -> u64 {
    let tables = all_tables(n, totals_only);
    let perms = permutations(n);
    let fixed: u64 = perms
        .iter()
        .map(|p| tables.iter().filter(|t| relabel(t, p) == **t).count() as u64)
        .sum();
    assert_eq!(fixed % perms.len() as u64, 0);
    fixed / perms.len() as u64
}

/// Number of orbits by collecting canonical forms.
pub fn orbit_count(n: usize, totals_only: bool) -> usize {
    let mut forms: Vec<Digits> = all_tables(n, totals_only)
        .iter()
        .map(|t| canonical(t))
        .collect();
    forms.sort();
    forms.dedup();
    forms.len()
}

/// The maps satisfying `pred`, as shorthand codes in enumeration order.
pub fn alpha_codes(t: &[u8], pred: impl Fn(&[u8], &[u8]) -> bool) -> Vec<String> {
    all_maps(table_order(t))
        .into_iter()
        .filter(|a| pred(t, a))
        .map(|a| show(&a))
        .collect()
}
