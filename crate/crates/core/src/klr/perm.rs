//! Permutations of strand positions and their reduced words.
//!
//! A word `(r_1, ..., r_k)` (0-based) denotes `w = s_{r_1} ⋯ s_{r_k}`. A
//! permutation is stored as the array `w[p]`, the top position of the strand
//! starting at bottom position `p`.

/// `s_{r_1} ⋯ s_{r_k}` as an array on `m` positions.
pub fn perm_of_word(m: usize, word: &[u8]) -> Vec<u8> {
    let mut arr: Vec<u8> = (0..m as u8).collect();
    for &r in word.iter().rev() {
        for v in arr.iter_mut() {
            if *v == r {
                *v = r + 1;
            } else if *v == r + 1 {
                *v = r;
            }
        }
    }
    arr
}

pub fn length(arr: &[u8]) -> usize {
    let mut n = 0;
    for p in 0..arr.len() {
        for q in p + 1..arr.len() {
            if arr[p] > arr[q] {
                n += 1;
            }
        }
    }
    n
}

pub fn is_reduced(m: usize, word: &[u8]) -> bool {
    length(&perm_of_word(m, word)) == word.len()
}

pub fn inverse(arr: &[u8]) -> Vec<u8> {
    let mut inv = vec![0u8; arr.len()];
    for (p, &v) in arr.iter().enumerate() {
        inv[v as usize] = p as u8;
    }
    inv
}

/// Whether `ℓ(s_r w) < ℓ(w)`.
pub fn is_left_descent(arr: &[u8], r: u8) -> bool {
    let inv = inverse(arr);
    inv[r as usize] > inv[r as usize + 1]
}

pub fn min_left_descent(arr: &[u8]) -> Option<u8> {
    let inv = inverse(arr);
    (0..arr.len().saturating_sub(1)).find(|&r| inv[r] > inv[r + 1]).map(|r| r as u8)
}

/// `s_r w`.
pub fn left_mul(arr: &[u8], r: u8) -> Vec<u8> {
    arr.iter()
        .map(|&v| {
            if v == r {
                r + 1
            } else if v == r + 1 {
                r
            } else {
                v
            }
        })
        .collect()
}

/// The lexicographically least reduced word of `w`.
pub fn canonical_word(arr: &[u8]) -> Vec<u8> {
    let mut cur = arr.to_vec();
    let mut out = Vec::new();
    while let Some(d) = min_left_descent(&cur) {
        out.push(d);
        cur = left_mul(&cur, d);
    }
    out
}

/// Labels along the top: `top[w(p)] = bottom[p]`.
pub fn act<T: Copy>(arr: &[u8], bottom: &[T]) -> Vec<T> {
    let mut top = bottom.to_vec();
    for (p, &v) in arr.iter().enumerate() {
        top[v as usize] = bottom[p];
    }
    top
}

/// Pairs of bottom positions `p < q` whose strands cross.
pub fn crossings(arr: &[u8]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for p in 0..arr.len() {
        for q in p + 1..arr.len() {
            if arr[p] > arr[q] {
                out.push((p, q));
            }
        }
    }
    out
}

/// All permutations of `m` positions, in lexicographic order of arrays.
pub fn all_perms(m: usize) -> Vec<Vec<u8>> {
    fn rec(cur: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v as u8);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

/// All words of content `nu` (`nu[i]` copies of vertex `i`), sorted.
pub fn sequences(nu: &[u32]) -> Vec<Vec<u8>> {
    let mut letters = Vec::new();
    for (i, &c) in nu.iter().enumerate() {
        for _ in 0..c {
            letters.push(i as u8);
        }
    }
    let mut out: Vec<Vec<u8>> = all_perms(letters.len())
        .into_iter()
        .map(|p| p.iter().map(|&k| letters[k as usize]).collect())
        .collect();
    out.sort();
    out.dedup();
    out
}
