//! Independent reference implementation used as an oracle: dense Kronecker
//! products, explicit kets, brute-force enumeration. Shares no code paths
//! with the library beyond `num_complex`.
#![allow(dead_code)]

use num_complex::Complex64 as C;

pub type M2 = [[C; 2]; 2];

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn pauli(letter: char) -> M2 {
    let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
    match letter {
        'I' => [[o, z], [z, o]],
        'X' => [[z, o], [o, z]],
        'Y' => [[z, -i], [i, z]],
        'Z' => [[o, z], [z, -o]],
        _ => panic!("bad letter {letter}"),
    }
}

pub fn mat_mul(a: &M2, b: &M2) -> M2 {
    let mut r = [[c(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    r
}

pub fn dagger(a: &M2) -> M2 {
    [[a[0][0].conj(), a[1][0].conj()], [a[0][1].conj(), a[1][1].conj()]]
}

pub fn lin(terms: &[(f64, M2)]) -> M2 {
    let mut r = [[c(0.0, 0.0); 2]; 2];
    for (w, m) in terms {
        for i in 0..2 {
            for j in 0..2 {
                r[i][j] += m[i][j] * *w;
            }
        }
    }
    r
}

pub fn max_diff(a: &M2, b: &M2) -> f64 {
    let mut d: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            d = d.max((a[i][j] - b[i][j]).norm());
        }
    }
    d
}

/// Strategy matrix written out entry by entry.
pub fn strategy(theta: f64, b1: f64, b2: f64) -> M2 {
    let (co, si) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let e = |phi: f64| C::from_polar(1.0, phi);
    let i = c(0.0, 1.0);
    [
        [e(b1) * co, i * e(b2) * si],
        [i * e(-b2) * si, e(-b1) * co],
    ]
}

/// Dense Kronecker product, first factor on the most significant bit.
pub fn kron_all(ms: &[M2]) -> Vec<Vec<C>> {
    let mut out = vec![vec![c(1.0, 0.0)]];
    for m in ms {
        let d = out.len();
        let mut next = vec![vec![c(0.0, 0.0); 2 * d]; 2 * d];
        for r in 0..d {
            for s in 0..d {
                for i in 0..2 {
                    for j in 0..2 {
                        next[2 * r + i][2 * s + j] = out[r][s] * m[i][j];
                    }
                }
            }
        }
        out = next;
    }
    out
}

pub fn mat_vec(m: &[Vec<C>], v: &[C]) -> Vec<C> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn braket(a: &[C], b: &[C]) -> C {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn expect(state: &[C], op: &[Vec<C>]) -> C {
    braket(state, &mat_vec(op, state))
}

pub fn norm(v: &[C]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

pub fn normalized(v: Vec<C>) -> Vec<C> {
    let n = norm(&v);
    v.into_iter().map(|a| a / n).collect()
}

fn bit(b: usize, q: usize, n: usize) -> usize {
    (b >> (n - 1 - q)) & 1
}

/// Amplitudes of a product of EPR pairs `(|01> + |10>)/sqrt 2`.
pub fn epr_pairs(n: usize, pairs: &[(usize, usize)]) -> Vec<C> {
    (0..1usize << n)
        .map(|b| {
            let ok = pairs.iter().all(|&(p, q)| bit(b, p, n) != bit(b, q, n));
            if ok {
                c(0.5f64.powf(pairs.len() as f64 / 2.0), 0.0)
            } else {
                c(0.0, 0.0)
            }
        })
        .collect()
}

pub fn ghz(n: usize) -> Vec<C> {
    let mut v = vec![c(0.0, 0.0); 1 << n];
    v[0] = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    v[(1 << n) - 1] = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    v
}

fn combine(alpha: f64, a: &[C], b: &[C]) -> Vec<C> {
    let w = (1.0 - alpha * alpha).max(0.0).sqrt();
    a.iter().zip(b).map(|(x, y)| x * alpha + y * w).collect()
}

pub fn psi_in(alpha: f64) -> Vec<C> {
    combine(alpha, &ghz(4), &epr_pairs(4, &[(0, 1), (2, 3)]))
}

pub fn matchings(items: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let first = items[0];
    let mut out = Vec::new();
    for k in 1..items.len() {
        let rest: Vec<usize> = items[1..]
            .iter()
            .copied()
            .filter(|&x| x != items[k])
            .collect();
        for mut m in matchings(&rest) {
            m.insert(0, (first, items[k]));
            out.push(m);
        }
    }
    out
}

fn matching_sum(n: usize) -> Vec<C> {
    let items: Vec<usize> = (0..n).collect();
    let mut s = vec![c(0.0, 0.0); 1 << n];
    for m in matchings(&items) {
        for (a, b) in s.iter_mut().zip(epr_pairs(n, &m)) {
            *a += b;
        }
    }
    normalized(s)
}

/// The literal three-pairing state, then rescaled to unit norm.
pub fn phi_in(alpha: f64) -> Vec<C> {
    let w = ((1.0 - alpha * alpha) / 3.0).max(0.0).sqrt();
    let mut v: Vec<C> = ghz(4).iter().map(|a| a * alpha).collect();
    for pairs in [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]] {
        for (a, b) in v.iter_mut().zip(epr_pairs(4, &pairs)) {
            *a += b * w;
        }
    }
    normalized(v)
}

pub fn phi_in_balanced(alpha: f64) -> Vec<C> {
    combine(alpha, &ghz(4), &matching_sum(4))
}

pub fn six_in(alpha: f64) -> Vec<C> {
    combine(alpha, &ghz(6), &matching_sum(6))
}

/// Per-player average Minority payoff of outcome `b`.
pub fn minority_payoff(b: usize, n: usize) -> f64 {
    let ones = b.count_ones() as usize;
    let m = ones.min(n - ones);
    if 2 * m == n {
        0.0
    } else {
        m as f64 / n as f64
    }
}

/// Expected per-player Minority payoff after every player applies `m`.
pub fn minority_expectation(state: &[C], m: &M2) -> f64 {
    let n = state.len().trailing_zeros() as usize;
    let u = kron_all(&vec![*m; n]);
    let out = mat_vec(&u, state);
    out.iter()
        .enumerate()
        .map(|(b, a)| a.norm_sqr() * minority_payoff(b, n))
        .sum()
}

/// `cos(a) P1 + sin(a) P2`.
pub fn plane_obs(p1: char, p2: char, angle: f64) -> M2 {
    lin(&[(angle.cos(), pauli(p1)), (angle.sin(), pauli(p2))])
}

/// Bell polynomial value: `coef[code]` multiplies the correlation where
/// observer `i` uses `settings[i][k_i]` and `k_i` is bit `n-1-i` of `code`.
pub fn bell_value(state: &[C], constant: f64, coef: &[f64], settings: &[[M2; 2]]) -> f64 {
    let n = settings.len();
    let mut total = constant;
    for (code, w) in coef.iter().enumerate() {
        if *w == 0.0 {
            continue;
        }
        let ops: Vec<M2> = (0..n).map(|i| settings[i][bit(code, i, n)]).collect();
        total += w * expect(state, &kron_all(&ops)).re;
    }
    total
}

/// Deterministic local bound by enumerating every `(+-1, +-1)` response
/// pair for every observer.
pub fn lhv(constant: f64, coef: &[f64], n: usize) -> f64 {
    let mut best: f64 = 0.0;
    for assign in 0..(1usize << (2 * n)) {
        let value = |i: usize, k: usize| -> f64 {
            if (assign >> (2 * i + k)) & 1 == 1 {
                -1.0
            } else {
                1.0
            }
        };
        let mut v = constant;
        for (code, w) in coef.iter().enumerate() {
            let p: f64 = (0..n).map(|i| value(i, bit(code, i, n))).product();
            v += w * p;
        }
        best = best.max(v.abs());
    }
    best
}

/// Coefficient vector from a printed sign list such as "-++- +--+ ...".
pub fn signs(s: &str) -> Vec<f64> {
    s.chars()
        .filter(|ch| !ch.is_whitespace())
        .map(|ch| if ch == '+' { 1.0 } else { -1.0 })
        .collect()
}
