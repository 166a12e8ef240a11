//! The Keccak-f\[b\] and Keccak-p\[b, n_r\] permutations over a 5×5 array of lanes.
//!
//! Lanes are held in `u64` words masked to the lane width `w = 2^l`, so every width from
//! `b = 25` (one-bit lanes) to `b = 1600` runs through the same code. Bit `z` of lane `(x, y)`
//! is global state bit `w·(5y + x) + z`, and bit `i` of a lane word has weight `2^i`.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// The seven permutation widths, indexed by `l`.
pub const WIDTHS: [usize; 7] = [25, 50, 100, 200, 400, 800, 1600];

/// Rotation offsets `r[x][y]`, reduced mod `w` when applied.
pub const ROTATION_OFFSETS: [[u32; 5]; 5] = [
    [0, 36, 3, 41, 18],
    [1, 44, 10, 45, 2],
    [62, 6, 43, 15, 61],
    [28, 55, 25, 21, 56],
    [27, 20, 39, 8, 14],
];

/// Returns `l` such that `width = 25·2^l`.
pub fn width_log(width: usize) -> Result<u32> {
    WIDTHS
        .iter()
        .position(|&b| b == width)
        .map(|l| l as u32)
        .ok_or(Error::InvalidWidth(width))
}

/// Full round count `12 + 2l` of Keccak-f for a width.
pub fn full_rounds(width: usize) -> Result<usize> {
    Ok(12 + 2 * width_log(width)? as usize)
}

/// Output bit `rc[t]` of the round-constant LFSR, `x^t mod (x^8 + x^6 + x^5 + x^4 + 1)`
/// evaluated at its constant term.
pub fn lfsr_rc(t: u64) -> bool {
    let mut reg: u16 = 1;
    for _ in 0..t % 255 {
        reg <<= 1;
        if reg & 0x100 != 0 {
            reg ^= 0x171;
        }
    }
    reg & 1 == 1
}

/// A round constant together with the round it belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RoundConstant {
    pub value: u64,
    pub round_index: usize,
}

/// Assembles `RC[i]` for lane width `2^l`: bit `2^j − 1` is `rc[j + 7i]` for `0 ≤ j ≤ l`.
pub fn round_constant(round_index: usize, l: u32) -> Result<RoundConstant> {
    if round_index >= 24 {
        return Err(Error::RoundIndexOutOfRange(round_index));
    }
    if l > 6 {
        return Err(Error::InvalidWidth(25usize << l.min(20)));
    }
    let mut value = 0u64;
    for j in 0..=l {
        if lfsr_rc(j as u64 + 7 * round_index as u64) {
            value |= 1 << ((1u32 << j) - 1);
        }
    }
    Ok(RoundConstant { value, round_index })
}

fn round_constants() -> &'static [u64; 24] {
    static TABLE: OnceLock<[u64; 24]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = [0u64; 24];
        for (i, rc) in table.iter_mut().enumerate() {
            *rc = round_constant(i, 6).expect("index in range").value;
        }
        table
    })
}

/// Rotation offset `r[x][y]` from the fixed table.
pub fn rotation_offset(x: usize, y: usize) -> u32 {
    ROTATION_OFFSETS[x % 5][y % 5]
}

/// Width and round count of a Keccak-p instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PermutationSpec {
    width: usize,
    rounds: usize,
}

impl PermutationSpec {
    pub fn new(width: usize, rounds: usize) -> Result<Self> {
        let max = full_rounds(width)?;
        if rounds == 0 || rounds > max {
            return Err(Error::InvalidRounds { width, rounds, max });
        }
        Ok(Self { width, rounds })
    }

    /// Keccak-f\[b\]: all `12 + 2l` rounds.
    pub fn keccak_f(width: usize) -> Result<Self> {
        Self::new(width, full_rounds(width)?)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    /// Indices of the rounds applied, always the last `n_r` of the full schedule.
    pub fn round_indices(&self) -> std::ops::Range<usize> {
        let full = 12 + 2 * width_log(self.width).expect("validated") as usize;
        full - self.rounds..full
    }

    pub fn is_full(&self) -> bool {
        self.round_indices().start == 0
    }
}

/// The 5×5 lane state of a Keccak permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KeccakState {
    lanes: [[u64; 5]; 5],
    width_log: u32,
}

impl KeccakState {
    pub fn zero(width: usize) -> Result<Self> {
        Ok(Self { lanes: [[0; 5]; 5], width_log: width_log(width)? })
    }

    pub fn width(&self) -> usize {
        25 << self.width_log
    }

    pub fn width_log(&self) -> u32 {
        self.width_log
    }

    pub fn lane_bits(&self) -> u32 {
        1 << self.width_log
    }

    fn mask(&self) -> u64 {
        lane_mask(self.lane_bits())
    }

    pub fn lane(&self, x: usize, y: usize) -> u64 {
        self.lanes[x][y]
    }

    /// Sets lane `(x, y)`; bits above the lane width are dropped.
    pub fn set_lane(&mut self, x: usize, y: usize, value: u64) {
        self.lanes[x][y] = value & self.mask();
    }

    /// Reads global state bit `w·(5y + x) + z`.
    pub fn bit(&self, index: usize) -> bool {
        let w = self.lane_bits() as usize;
        let lane = index / w;
        (self.lanes[lane % 5][lane / 5] >> (index % w)) & 1 == 1
    }

    pub fn set_bit(&mut self, index: usize, value: bool) {
        let w = self.lane_bits() as usize;
        let lane = index / w;
        let word = &mut self.lanes[lane % 5][lane / 5];
        let bit = 1u64 << (index % w);
        if value {
            *word |= bit;
        } else {
            *word &= !bit;
        }
    }

    /// Builds a state from `b/8` bytes; byte `k` holds global bits `8k..8k+7`, LSB first.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let width = bytes.len() * 8;
        let l = width_log(width)?;
        if l < 3 {
            return Err(Error::NotByteAligned(width));
        }
        let lane_bytes = 1usize << (l - 3);
        let mut state = Self { lanes: [[0; 5]; 5], width_log: l };
        for (i, chunk) in bytes.chunks_exact(lane_bytes).enumerate() {
            let mut word = [0u8; 8];
            word[..lane_bytes].copy_from_slice(chunk);
            state.lanes[i % 5][i / 5] = u64::from_le_bytes(word);
        }
        Ok(state)
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let mut out = vec![0u8; self.width() / 8];
        self.write_bytes(&mut out)?;
        Ok(out)
    }

    /// Serializes into `out`, which must be exactly `b/8` bytes long.
    pub fn write_bytes(&self, out: &mut [u8]) -> Result<()> {
        if self.width_log < 3 {
            return Err(Error::NotByteAligned(self.width()));
        }
        if out.len() != self.width() / 8 {
            return Err(Error::LengthMismatch { expected: self.width() / 8, actual: out.len() });
        }
        let lane_bytes = 1usize << (self.width_log - 3);
        for (i, chunk) in out.chunks_exact_mut(lane_bytes).enumerate() {
            chunk.copy_from_slice(&self.lanes[i % 5][i / 5].to_le_bytes()[..lane_bytes]);
        }
        Ok(())
    }
}

fn lane_mask(w: u32) -> u64 {
    if w == 64 {
        u64::MAX
    } else {
        (1u64 << w) - 1
    }
}

/// Cyclic rotation within a `w`-bit lane moving bit `i` to `(i + r) mod w`.
pub fn rot(lane: u64, r: u32, w: u32) -> u64 {
    let r = r % w;
    if r == 0 {
        return lane;
    }
    if w == 64 {
        return lane.rotate_left(r);
    }
    ((lane << r) | (lane >> (w - r))) & lane_mask(w)
}

pub fn theta(state: &KeccakState) -> KeccakState {
    let w = state.lane_bits();
    let a = &state.lanes;
    let mut c = [0u64; 5];
    for (x, parity) in c.iter_mut().enumerate() {
        *parity = a[x][0] ^ a[x][1] ^ a[x][2] ^ a[x][3] ^ a[x][4];
    }
    let mut out = *state;
    for x in 0..5 {
        let d = c[(x + 4) % 5] ^ rot(c[(x + 1) % 5], 1, w);
        for y in 0..5 {
            out.lanes[x][y] ^= d;
        }
    }
    out
}

pub fn rho(state: &KeccakState) -> KeccakState {
    let w = state.lane_bits();
    let mut out = *state;
    for x in 0..5 {
        for y in 0..5 {
            out.lanes[x][y] = rot(state.lanes[x][y], ROTATION_OFFSETS[x][y], w);
        }
    }
    out
}

pub fn pi(state: &KeccakState) -> KeccakState {
    let mut out = *state;
    for x in 0..5 {
        for y in 0..5 {
            out.lanes[y][(2 * x + 3 * y) % 5] = state.lanes[x][y];
        }
    }
    out
}

/// ρ and π combined: `B[y, 2x + 3y] = rot(A[x, y], r[x, y])`.
pub fn rho_pi(state: &KeccakState) -> KeccakState {
    let w = state.lane_bits();
    let mut out = *state;
    for x in 0..5 {
        for y in 0..5 {
            out.lanes[y][(2 * x + 3 * y) % 5] = rot(state.lanes[x][y], ROTATION_OFFSETS[x][y], w);
        }
    }
    out
}

pub fn chi(state: &KeccakState) -> KeccakState {
    let mask = state.mask();
    let b = &state.lanes;
    let mut out = *state;
    for x in 0..5 {
        for y in 0..5 {
            out.lanes[x][y] = b[x][y] ^ (!b[(x + 1) % 5][y] & b[(x + 2) % 5][y] & mask);
        }
    }
    out
}

pub fn iota(state: &KeccakState, rc: u64) -> KeccakState {
    let mut out = *state;
    out.lanes[0][0] ^= rc & state.mask();
    out
}

/// One round θ, ρ, π, χ, ι. The constant is truncated to the lane width.
pub fn apply_round(state: &KeccakState, rc: RoundConstant) -> KeccakState {
    iota(&chi(&rho_pi(&theta(state))), rc.value)
}

fn permute_in_place(state: &mut KeccakState, rounds: std::ops::Range<usize>) {
    let table = round_constants();
    for i in rounds {
        *state = iota(&chi(&rho_pi(&theta(state))), table[i]);
    }
}

/// Keccak-p\[b, n_r\]: the last `n_r` rounds of Keccak-f\[b\].
pub fn keccak_p(state: &KeccakState, spec: &PermutationSpec) -> Result<KeccakState> {
    if spec.width() != state.width() {
        return Err(Error::LengthMismatch { expected: spec.width(), actual: state.width() });
    }
    let mut out = *state;
    permute_in_place(&mut out, spec.round_indices());
    Ok(out)
}

/// Keccak-f\[b\] with `12 + 2l` rounds.
pub fn keccak_f(state: &KeccakState) -> KeccakState {
    let mut out = *state;
    permute_in_place(&mut out, 0..12 + 2 * state.width_log as usize);
    out
}

impl crate::Permutation for PermutationSpec {
    fn width(&self) -> usize {
        self.width
    }

    fn permute(&self, state: &mut [u8]) {
        let mut lanes = KeccakState::from_bytes(state).expect("state length matches width");
        permute_in_place(&mut lanes, self.round_indices());
        lanes.write_bytes(state).expect("state length matches width");
    }
}
