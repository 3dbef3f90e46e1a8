//! Coordinate arithmetic on `ℤ/o₁ × … × ℤ/o_s` for arbitrary orders.

use crate::cyclo::RootOfUnity;

/// All coordinate vectors, first coordinate varying slowest.
pub fn elements(orders: &[u64]) -> Vec<Vec<u64>> {
    let total: u64 = orders.iter().product();
    let mut out = Vec::with_capacity(total as usize);
    let mut cur = vec![0u64; orders.len()];
    for _ in 0..total {
        out.push(cur.clone());
        for i in (0..orders.len()).rev() {
            cur[i] += 1;
            if cur[i] < orders[i] {
                break;
            }
            cur[i] = 0;
        }
    }
    out
}

pub fn index_of(orders: &[u64], c: &[u64]) -> usize {
    let mut idx = 0u64;
    for (o, x) in orders.iter().zip(c) {
        idx = idx * o + x;
    }
    idx as usize
}

pub fn reduce(orders: &[u64], c: &[i64]) -> Vec<u64> {
    orders
        .iter()
        .zip(c)
        .map(|(&o, &x)| x.rem_euclid(o as i64) as u64)
        .collect()
}

pub fn add(orders: &[u64], a: &[u64], b: &[u64]) -> Vec<u64> {
    orders
        .iter()
        .zip(a.iter().zip(b))
        .map(|(o, (x, y))| (x + y) % o)
        .collect()
}

pub fn neg(orders: &[u64], a: &[u64]) -> Vec<u64> {
    orders.iter().zip(a).map(|(o, x)| (o - x) % o).collect()
}

pub fn scale(orders: &[u64], a: &[u64], k: u64) -> Vec<u64> {
    orders
        .iter()
        .zip(a)
        .map(|(o, x)| ((*x as u128 * k as u128) % *o as u128) as u64)
        .collect()
}

pub fn is_zero(a: &[u64]) -> bool {
    a.iter().all(|x| *x == 0)
}

pub fn order_of(orders: &[u64], a: &[u64]) -> u64 {
    orders.iter().zip(a).fold(1, |acc, (o, x)| {
        let g = num_integer::gcd(*x, *o);
        num_integer::lcm(acc, o / g)
    })
}

/// `exp(2πi Σ χ_i x_i / o_i)`.
pub fn dual_pairing(orders: &[u64], chi: &[u64], x: &[u64]) -> RootOfUnity {
    let l = orders.iter().fold(1u64, |a, o| num_integer::lcm(a, *o));
    let mut e: u128 = 0;
    for ((o, c), y) in orders.iter().zip(chi).zip(x) {
        e += (*c as u128 * *y as u128 % *o as u128) * (l / o) as u128;
    }
    RootOfUnity::new(l, (e % l as u128) as i64)
}

/// Prime factorization as `(p, e)` pairs in increasing `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// The subgroup generated by `gens`, as a sorted element list.
pub fn span(orders: &[u64], gens: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let mut set = std::collections::BTreeSet::new();
    set.insert(vec![0u64; orders.len()]);
    for g in gens {
        let mut multiples = Vec::new();
        let mut cur = g.clone();
        while !is_zero(&cur) {
            multiples.push(cur.clone());
            cur = add(orders, &cur, g);
        }
        let base: Vec<Vec<u64>> = set.iter().cloned().collect();
        for b in &base {
            for m in &multiples {
                set.insert(add(orders, b, m));
            }
        }
    }
    set.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_elements() {
        let e = elements(&[2, 3]);
        assert_eq!(e.len(), 6);
        assert_eq!(e[1], vec![0, 1]);
        assert_eq!(e[3], vec![1, 0]);
        for (i, c) in e.iter().enumerate() {
            assert_eq!(index_of(&[2, 3], c), i);
        }
    }

    #[test]
    fn orders_and_spans() {
        assert_eq!(order_of(&[2, 4], &[1, 2]), 2);
        assert_eq!(order_of(&[2, 4], &[1, 1]), 4);
        assert_eq!(span(&[2, 4], &[vec![1, 2]]).len(), 2);
        assert_eq!(span(&[2, 4], &[vec![1, 1], vec![0, 2]]).len(), 4);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
    }
}
