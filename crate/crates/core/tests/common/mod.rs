#![allow(dead_code)]

use std::collections::BTreeMap;

use cayley_core::algebra::MagmaTable;
use rand::seq::SliceRandom;
use rand::Rng;

/// Brute-force group check, independent of `axiom_check`.
pub fn is_group_brute(m: &MagmaTable) -> bool {
    let n = m.len();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if m.mul(m.mul(x, y), z) != m.mul(x, m.mul(y, z)) {
                    return false;
                }
            }
        }
    }
    let Some(e) = (0..n).find(|&e| (0..n).all(|x| m.mul(e, x) == x && m.mul(x, e) == x)) else {
        return false;
    };
    (0..n).all(|x| (0..n).any(|y| m.mul(x, y) == e && m.mul(y, x) == e))
}

/// Closes `gens` under `mul` and tabulates the result.
fn generated<T, F, N>(gens: &[T], mul: F, name: N) -> MagmaTable
where
    T: Clone + Ord,
    F: Fn(&T, &T) -> T,
    N: Fn(&T) -> String,
{
    let mut elems: Vec<T> = gens.to_vec();
    elems.sort();
    elems.dedup();
    let mut i = 0;
    while i < elems.len() {
        for j in 0..elems.len() {
            for p in [mul(&elems[i], &elems[j]), mul(&elems[j], &elems[i])] {
                if !elems.contains(&p) {
                    elems.push(p);
                }
            }
        }
        i += 1;
    }
    elems.sort();
    let names: Vec<String> = elems.iter().map(&name).collect();
    let index: BTreeMap<&T, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    MagmaTable::from_fn(&names, |a, b| index[&mul(&elems[a], &elems[b])]).unwrap()
}

/// `Z_{n1} × … × Z_{nk}`, elements named by their digit tuples.
pub fn abelian(orders: &[usize]) -> MagmaTable {
    let gens: Vec<Vec<usize>> = (0..orders.len())
        .map(|i| {
            (0..orders.len())
                .map(|j| usize::from(i == j) % orders[j])
                .collect()
        })
        .collect();
    let zero = vec![0; orders.len()];
    let mut all = gens.clone();
    all.push(zero);
    generated(
        &all,
        |a, b| {
            a.iter()
                .zip(b)
                .zip(orders)
                .map(|((x, y), n)| (x + y) % n)
                .collect()
        },
        |a| a.iter().map(|d| d.to_string()).collect(),
    )
}

#[allow(clippy::ptr_arg)]
fn compose(p: &Vec<usize>, q: &Vec<usize>) -> Vec<usize> {
    // (p·q)(i) = q(p(i)): apply p first.
    p.iter().map(|&i| q[i]).collect()
}

#[allow(clippy::ptr_arg)]
fn perm_name(p: &Vec<usize>) -> String {
    p.iter().map(|i| (i + 1).to_string()).collect()
}

pub fn symmetric3() -> MagmaTable {
    generated(&[vec![1, 0, 2], vec![1, 2, 0]], compose, perm_name)
}

pub fn dihedral4() -> MagmaTable {
    generated(&[vec![1, 2, 3, 0], vec![2, 1, 0, 3]], compose, perm_name)
}

pub fn quaternion() -> MagmaTable {
    // (sign, unit) with units 1, i, j, k as 0..4.
    fn unit_mul(a: usize, b: usize) -> (bool, usize) {
        const T: [[(bool, usize); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        T[a][b]
    }
    generated(
        &[(false, 1), (false, 2)],
        |&(s, a), &(t, b)| {
            let (u, c) = unit_mul(a, b);
            (s ^ t ^ u, c)
        },
        |&(s, a)| format!("{}{}", if s { "-" } else { "" }, ["1", "i", "j", "k"][a]),
    )
}

/// All groups of order at most 8, up to isomorphism.
pub fn small_groups() -> Vec<(&'static str, MagmaTable)> {
    let mut v: Vec<(&'static str, MagmaTable)> = Vec::new();
    let cyclic = ["Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8"];
    for (n, name) in (1..=8).zip(cyclic) {
        v.push((name, abelian(&[n])));
    }
    v.push(("Z2xZ2", abelian(&[2, 2])));
    v.push(("Z4xZ2", abelian(&[4, 2])));
    v.push(("Z2xZ2xZ2", abelian(&[2, 2, 2])));
    v.push(("S3", symmetric3()));
    v.push(("D4", dihedral4()));
    v.push(("Q8", quaternion()));
    v
}

/// Subsets of `0..n` of size `1..=k`, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == k {
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn carrier(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

fn shuffled(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

pub fn random_left_quasigroup(n: usize, rng: &mut impl Rng) -> MagmaTable {
    let rows: Vec<Vec<usize>> = (0..n).map(|_| shuffled(n, rng)).collect();
    MagmaTable::from_fn(&carrier(n), |i, j| rows[i][j]).unwrap()
}

/// A Latin square filled cell by cell in random symbol order.
pub fn random_quasigroup(n: usize, rng: &mut impl Rng) -> MagmaTable {
    fn fill(k: usize, n: usize, cells: &mut [usize], rng: &mut impl Rng) -> bool {
        if k == n * n {
            return true;
        }
        let (i, j) = (k / n, k % n);
        for s in shuffled(n, rng) {
            let clash =
                (0..j).any(|c| cells[i * n + c] == s) || (0..i).any(|r| cells[r * n + j] == s);
            if !clash {
                cells[k] = s;
                if fill(k + 1, n, cells, rng) {
                    return true;
                }
            }
        }
        false
    }
    let mut cells = vec![0; n * n];
    assert!(fill(0, n, &mut cells, rng));
    MagmaTable::from_fn(&carrier(n), |i, j| cells[i * n + j]).unwrap()
}
