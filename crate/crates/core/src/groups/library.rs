//! Named small groups: cyclic, abelian products, dihedral, quaternion,
//! symmetric and alternating groups.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{AbelianGroup, FiniteGroup};

type Perm = Vec<u8>;

fn compose(a: &Perm, b: &Perm) -> Perm {
    // (a * b)(i) = a(b(i))
    b.iter().map(|&i| a[i as usize]).collect()
}

fn cycle_label(p: &Perm) -> String {
    let n = p.len();
    let mut seen = alloc::vec![false; n];
    let mut out = String::new();
    for s in 0..n {
        if seen[s] || p[s] as usize == s {
            continue;
        }
        out.push('(');
        let mut i = s;
        let mut first = true;
        while !seen[i] {
            seen[i] = true;
            if !first {
                out.push(' ');
            }
            first = false;
            out.push_str(&format!("{}", i + 1));
            i = p[i] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push('e');
    }
    out
}

/// Permutation group generated by `gens` (images of `0..n`).
pub fn permutation_group(name: &str, n: usize, gens: &[Perm]) -> FiniteGroup {
    let id: Perm = (0..n as u8).collect();
    FiniteGroup::generate(name, id, gens, compose, cycle_label)
}

pub fn cyclic(n: u32) -> FiniteGroup {
    AbelianGroup::cyclic(n).as_group().with_name(&format!("Z{n}"))
}

pub fn abelian(factors: &[u32]) -> FiniteGroup {
    let a = AbelianGroup::new(factors).expect("positive factors");
    a.as_group()
}

/// Dihedral group of order `2n` (`n >= 3`), symmetries of an `n`-gon.
pub fn dihedral(n: usize) -> FiniteGroup {
    let r: Perm = (0..n).map(|i| ((i + 1) % n) as u8).collect();
    let s: Perm = (0..n).map(|i| ((n - i) % n) as u8).collect();
    let elems_name = format!("D{n}");
    let g = permutation_group(&elems_name, n, &[r, s]);
    debug_assert_eq!(g.order(), 2 * n);
    g
}

pub fn symmetric(n: usize) -> FiniteGroup {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push((0..n).map(|i| ((i + 1) % n) as u8).collect());
        let mut t: Perm = (0..n as u8).collect();
        t.swap(0, 1);
        gens.push(t);
    }
    permutation_group(&format!("S{n}"), n, &gens)
}

pub fn alternating(n: usize) -> FiniteGroup {
    let gens: Vec<Perm> = (2..n)
        .map(|k| {
            let mut p: Perm = (0..n as u8).collect();
            p[0] = 1;
            p[1] = k as u8;
            p[k] = 0;
            p
        })
        .collect();
    permutation_group(&format!("A{n}"), n, &gens)
}

/// Quaternion group `{±1, ±i, ±j, ±k}` via left multiplication on the
/// integer basis `(1, i, j, k)`.
pub fn quaternion() -> FiniteGroup {
    type M = [i8; 16];
    let mul = |a: &M, b: &M| -> M {
        let mut c = [0i8; 16];
        for r in 0..4 {
            for s in 0..4 {
                c[r * 4 + s] = (0..4).map(|k| a[r * 4 + k] * b[k * 4 + s]).sum();
            }
        }
        c
    };
    let id: M = [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1];
    // left multiplication by i and by j on (1, i, j, k)
    let li: M = [0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0];
    let lj: M = [0, 0, -1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, -1, 0, 0];
    let label = |m: &M| -> String {
        // first column is the image of 1
        let col = [m[0], m[4], m[8], m[12]];
        let names = ["1", "i", "j", "k"];
        let (pos, &v) = col.iter().enumerate().find(|(_, v)| **v != 0).unwrap();
        format!("{}{}", if v < 0 { "-" } else { "" }, names[pos])
    };
    FiniteGroup::generate("Q8", id, &[li, lj], mul, label)
}
