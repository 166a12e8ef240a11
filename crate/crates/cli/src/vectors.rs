//! Deterministic test vectors and their text format.
//!
//! Record `i` draws its lengths and bytes from Keccak[1088, 512] applied to `seed ‖ i`, with
//! `i` as 8 little-endian bytes.

use std::fmt::Write as _;
use std::fs;

use anyhow::{bail, Context};
use keyak::keyak::{open, seal, KeyakInstance};
use keyak::sponge::keccak_rc_hash;

use crate::{parse_hex, VectorArgs, VerificationFailure};

const MAX_AD: usize = 128;
const MAX_PT: usize = 512;
const DRAW_BYTES: usize = 2048;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorRecord {
    pub instance: KeyakInstance,
    pub key: Vec<u8>,
    pub nonce: Vec<u8>,
    pub ad: Vec<u8>,
    pub pt: Vec<u8>,
    pub ct: Vec<u8>,
    pub tag: Vec<u8>,
    pub forget: bool,
}

struct Draw {
    bytes: Vec<u8>,
    pos: usize,
}

impl Draw {
    fn take(&mut self, n: usize) -> &[u8] {
        let out = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        out
    }

    /// Uniform-ish value in `0..=max` from two bytes.
    fn below_or_eq(&mut self, max: usize) -> usize {
        let b = self.take(2);
        u16::from_le_bytes([b[0], b[1]]) as usize % (max + 1)
    }
}

pub fn derive(instance: &KeyakInstance, seed: &[u8], index: u64) -> anyhow::Result<VectorRecord> {
    let mut input = seed.to_vec();
    input.extend_from_slice(&index.to_le_bytes());
    let mut draw = Draw { bytes: keccak_rc_hash(1088, 512, &input, 8 * DRAW_BYTES)?, pos: 0 };

    let (min_bits, max_bits) = instance.key_bits_range();
    let key_len = min_bits / 8 + draw.below_or_eq(max_bits / 8 - min_bits / 8);
    let nonce_len = draw.below_or_eq(instance.recommended_nonce_len());
    let ad_len = draw.below_or_eq(MAX_AD);
    let pt_len = draw.below_or_eq(MAX_PT);
    let forget = draw.take(1)[0] & 1 == 1;
    let key = draw.take(key_len).to_vec();
    let nonce = draw.take(nonce_len).to_vec();
    let ad = draw.take(ad_len).to_vec();
    let pt = draw.take(pt_len).to_vec();

    let (ct, tag) = seal(instance, &key, &nonce, &ad, &pt, forget)?;
    Ok(VectorRecord { instance: *instance, key, nonce, ad, pt, ct, tag, forget })
}

pub fn format(records: &[VectorRecord]) -> String {
    let mut out = String::new();
    for (i, r) in records.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "Instance: {}", r.instance.name());
        for (label, value) in [("Key", &r.key), ("Nonce", &r.nonce), ("AD", &r.ad), ("PT", &r.pt), ("CT", &r.ct), ("Tag", &r.tag)] {
            let _ = writeln!(out, "{label}: {}", hex::encode(value));
        }
        let _ = writeln!(out, "Forget: {}", u8::from(r.forget));
    }
    out
}

pub fn parse(text: &str) -> anyhow::Result<Vec<VectorRecord>> {
    let mut records = Vec::new();
    for (n, block) in text.split("\n\n").enumerate() {
        let block = block.trim_end_matches('\n');
        if block.is_empty() {
            continue;
        }
        records.push(parse_record(block).with_context(|| format!("record {n}"))?);
    }
    Ok(records)
}

fn parse_record(block: &str) -> anyhow::Result<VectorRecord> {
    let labels = ["Instance", "Key", "Nonce", "AD", "PT", "CT", "Tag", "Forget"];
    let lines: Vec<&str> = block.lines().collect();
    if lines.len() != labels.len() {
        bail!("expected {} lines, found {}", labels.len(), lines.len());
    }
    let mut values = Vec::with_capacity(labels.len());
    for (line, label) in lines.iter().zip(labels) {
        match line.split_once(": ") {
            Some((l, v)) if l == label => values.push(v),
            _ => bail!("expected `{label}: ...`, found `{line}`"),
        }
    }
    let hex_field = |i: usize| -> anyhow::Result<Vec<u8>> {
        if values[i].chars().any(|c| c.is_ascii_uppercase() || c.is_whitespace()) {
            bail!("{} must be lowercase hex", labels[i]);
        }
        parse_hex(labels[i], values[i])
    };
    let forget = match values[7] {
        "0" => false,
        "1" => true,
        other => bail!("Forget must be 0 or 1, found `{other}`"),
    };
    Ok(VectorRecord {
        instance: KeyakInstance::by_name(values[0])?,
        key: hex_field(1)?,
        nonce: hex_field(2)?,
        ad: hex_field(3)?,
        pt: hex_field(4)?,
        ct: hex_field(5)?,
        tag: hex_field(6)?,
        forget,
    })
}

/// Recomputes every record; the first mismatch is a verification failure naming the record.
pub fn check(records: &[VectorRecord]) -> anyhow::Result<()> {
    for (n, r) in records.iter().enumerate() {
        let (ct, tag) = seal(&r.instance, &r.key, &r.nonce, &r.ad, &r.pt, r.forget).with_context(|| format!("record {n}"))?;
        let opened = open(&r.instance, &r.key, &r.nonce, &r.ad, &r.ct, &r.tag, r.forget);
        if ct != r.ct || tag != r.tag || opened.as_deref() != Ok(r.pt.as_slice()) {
            return Err(VerificationFailure(format!("record {n} does not verify")).into());
        }
    }
    Ok(())
}

pub(crate) fn run(args: VectorArgs) -> anyhow::Result<()> {
    if let Some(path) = &args.check {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let records = parse(&text)?;
        check(&records)?;
        println!("{} records verified", records.len());
        return Ok(());
    }
    let (Some(name), Some(count), Some(seed)) = (&args.instance, args.count, &args.seed) else {
        bail!("--instance, --count and --seed are required");
    };
    let instance = KeyakInstance::by_name(name)?;
    let seed = parse_hex("seed", seed)?;
    let records = (0..count).map(|i| derive(&instance, &seed, i)).collect::<anyhow::Result<Vec<_>>>()?;
    let text = format(&records);
    match &args.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
