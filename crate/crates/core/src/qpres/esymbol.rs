use super::QpresError;
use crate::LaurentInt;

/// Number of pairs `i < j` with `seq[i] > seq[j]`.
pub fn inversion_length(seq: &[u32]) -> Result<usize, QpresError> {
    for (a, x) in seq.iter().enumerate() {
        if seq[a + 1..].contains(x) {
            return Err(QpresError::RepeatedEntries(seq.to_vec()));
        }
    }
    Ok(count_inversions(seq))
}

pub(crate) fn count_inversions(seq: &[u32]) -> usize {
    let mut count = 0;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            if seq[a] > seq[b] {
                count += 1;
            }
        }
    }
    count
}

/// The q-deformed Levi-Civita symbol: zero on repeated entries, otherwise
/// `(-q)^ℓ` with `ℓ` the inversion count.
pub fn e_symbol(seq: &[u32], n: usize) -> Result<LaurentInt, QpresError> {
    if let Some(&bad) = seq.iter().find(|&&x| x == 0 || x as usize > n) {
        return Err(QpresError::IndexOutOfRange { index: bad, level: n });
    }
    match inversion_length(seq) {
        Ok(l) => Ok(LaurentInt::neg_q_pow(l as i64)),
        Err(_) => Ok(LaurentInt::constant(0)),
    }
}

/// All permutations of `1..=n` in lexicographic order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<u32>> {
    let mut cur: Vec<u32> = (1..=n as u32).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use proptest::prelude::*;

    #[test]
    fn inversion_examples() {
        assert_eq!(inversion_length(&[1, 2, 3]).unwrap(), 0);
        assert_eq!(inversion_length(&[2, 1]).unwrap(), 1);
        assert_eq!(inversion_length(&[3, 2, 1]).unwrap(), 3);
        assert!(matches!(inversion_length(&[1, 1]), Err(QpresError::RepeatedEntries(_))));
    }

    #[test]
    fn e_symbol_examples() {
        assert_eq!(e_symbol(&[1, 2, 3, 4], 4).unwrap(), LaurentInt::constant(1));
        assert!(e_symbol(&[1, 1, 3], 3).unwrap().is_zero());
        assert_eq!(e_symbol(&[1, 3, 2], 3).unwrap(), LaurentInt::monomial(-1, 1));
        assert!(matches!(e_symbol(&[1, 4], 3), Err(QpresError::IndexOutOfRange { index: 4, level: 3 })));
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(1).len(), 1);
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(3)[0], vec![1, 2, 3]);
        assert_eq!(permutations(3)[5], vec![3, 2, 1]);
    }

    proptest! {
        #[test]
        fn adjacent_swap_changes_length_by_one(n in 2usize..7, seed in any::<u64>(), pos in 0usize..6) {
            let perms = permutations(n);
            let p = perms[(seed % perms.len() as u64) as usize].clone();
            let pos = pos % (n - 1);
            let mut s = p.clone();
            s.swap(pos, pos + 1);
            let before = e_symbol(&p, n).unwrap();
            let after = e_symbol(&s, n).unwrap();
            let factor = if p[pos] < p[pos + 1] { LaurentInt::neg_q_pow(1) } else { LaurentInt::neg_q_pow(-1) };
            prop_assert_eq!(after, &before * &factor);
        }
    }
}
