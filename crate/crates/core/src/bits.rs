//! Word-level bitset helpers shared by the graph kernels.

#[inline]
pub fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

#[inline]
pub fn test(words: &[u64], i: usize) -> bool {
    words[i >> 6] >> (i & 63) & 1 == 1
}

#[inline]
pub fn set(words: &mut [u64], i: usize) {
    words[i >> 6] |= 1u64 << (i & 63);
}

#[inline]
pub fn clear(words: &mut [u64], i: usize) {
    words[i >> 6] &= !(1u64 << (i & 63));
}

#[inline]
pub fn count(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

/// Popcount of `a & b`.
#[inline]
pub fn and_count(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

#[inline]
pub fn is_empty(words: &[u64]) -> bool {
    words.iter().all(|&w| w == 0)
}

/// Mask with the lowest `n` bits set, spread over `words_for(n)` words.
pub fn full(n: usize) -> Vec<u64> {
    let mut out = vec![0u64; words_for(n)];
    for i in 0..n {
        set(&mut out, i);
    }
    out
}

/// Clears every bit at position `<= v`.
pub fn clear_through(words: &mut [u64], v: usize) {
    let full_words = (v + 1) / 64;
    for w in words.iter_mut().take(full_words) {
        *w = 0;
    }
    let rem = (v + 1) % 64;
    if rem > 0 && full_words < words.len() {
        words[full_words] &= !0u64 << rem;
    }
}

/// Iterator over set bit positions in ascending order.
pub struct Ones<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let tz = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + tz);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

pub fn ones(words: &[u64]) -> Ones<'_> {
    Ones {
        words,
        idx: 0,
        cur: words.first().copied().unwrap_or(0),
    }
}
