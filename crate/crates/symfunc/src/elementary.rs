//! Monomial-symmetric coefficients of products of elementary symmetric polynomials.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;
use series_core::Rational;

use crate::error::{Result, SymError};

type Expansion = Arc<BTreeMap<Vec<u8>, i128>>;

fn cache() -> &'static Mutex<HashMap<(usize, Vec<u32>), Expansion>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, Vec<u32>), Expansion>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn is_partition(a: &[u8]) -> bool {
    a.windows(2).all(|w| w[0] >= w[1])
}

/// Coefficients of x^ν (ν a partition) in ∏ e_k^{μ_k} over n variables.
fn expansion(n: usize, mu: &[u32]) -> Expansion {
    let key = (n, mu.to_vec());
    if let Some(e) = cache().lock().unwrap().get(&key) {
        return e.clone();
    }
    let mut poly: HashMap<Vec<u8>, i128> = HashMap::from([(vec![0u8; n], 1)]);
    for (k, &times) in mu.iter().enumerate() {
        let subsets = k_subsets(n, k + 1);
        for _ in 0..times {
            let mut next: HashMap<Vec<u8>, i128> = HashMap::new();
            for (m, c) in &poly {
                for s in &subsets {
                    let mut m2 = m.clone();
                    for &i in s {
                        m2[i] += 1;
                    }
                    *next.entry(m2).or_insert(0) += c;
                }
            }
            poly = next;
        }
    }
    let out: BTreeMap<Vec<u8>, i128> = poly.into_iter().filter(|(m, c)| *c != 0 && is_partition(m)).collect();
    let out = Arc::new(out);
    cache().lock().unwrap().insert(key, out.clone());
    out
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Checks symmetry of a polynomial in n variables, reporting a transposition that fails.
pub fn check_symmetric(n: usize, f: &BTreeMap<Vec<u8>, Rational>) -> std::result::Result<(), (usize, usize)> {
    for i in 0..n.saturating_sub(1) {
        for (a, c) in f {
            let mut b = a.clone();
            b.swap(i, i + 1);
            if &b != a && f.get(&b) != Some(c) {
                return Err((i, i + 1));
            }
        }
    }
    Ok(())
}

/// Writes a symmetric polynomial in n variables in elementary symmetric
/// coordinates: returns exponent vectors (μ₁..μₙ) of e₁^{μ₁}⋯eₙ^{μₙ}.
pub fn to_elementary(n: usize, f: &BTreeMap<Vec<u8>, Rational>) -> Result<BTreeMap<Vec<u32>, Rational>> {
    let mut rest: BTreeMap<Vec<u8>, Rational> = f.iter().filter(|(a, c)| is_partition(a) && !c.is_zero()).map(|(a, c)| (a.clone(), c.clone())).collect();
    let mut out = BTreeMap::new();
    while let Some((lambda, c)) = rest.pop_last() {
        let mu: Vec<u32> = (0..n).map(|k| lambda[k] as u32 - if k + 1 < n { lambda[k + 1] as u32 } else { 0 }).collect();
        let exp = expansion(n, &mu);
        if exp.get(&lambda) != Some(&1) {
            return Err(SymError::Domain("elementary expansion lost its leading term".into()));
        }
        for (nu, k) in exp.iter() {
            if nu == &lambda {
                continue;
            }
            let e = rest.entry(nu.clone()).or_insert_with(Rational::zero);
            *e -= &c * Rational::from_integer((*k).into());
            if e.is_zero() {
                rest.remove(nu);
            }
        }
        out.insert(mu, c);
    }
    Ok(out)
}
