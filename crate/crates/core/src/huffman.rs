//! Canonical Huffman code construction and the slot/RSV assignment model.
//!
//! A JPEG Huffman table is sixteen length counts `L1..L16` plus a
//! slot-ordered value list. The counts fix the code *shape*; the value list
//! decides which RSV each slot (and therefore each code) stands for. All
//! table rewriting in this crate permutes or duplicates values while
//! leaving the counts untouched, so the DHT segment never changes length.

use crate::error::{Error, Result};

/// Run/Size Value: the byte `run << 4 | size` attached to one AC Huffman
/// code. `0x00` (EOB) and `0xF0` (ZRL) are ordinary values here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rsv(pub u8);

impl Rsv {
    pub const EOB: Rsv = Rsv(0x00);
    pub const ZRL: Rsv = Rsv(0xF0);

    pub fn run(self) -> u8 {
        self.0 >> 4
    }

    pub fn size(self) -> u8 {
        self.0 & 0x0F
    }
}

impl std::fmt::Display for Rsv {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#04x}", self.0)
    }
}

/// One table slot: the RSV it stands for and its canonical code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Slot {
    pub rsv: Rsv,
    /// Code bits, right-aligned in `code`, `length` bits long (1..=16).
    pub code: u16,
    pub length: u8,
}

/// A complete Huffman table: fixed length counts plus slot-ordered values,
/// with the canonical code of every slot precomputed.
///
/// Slots are indexed from 0 in code order, so lengths are non-decreasing
/// with the slot index. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    counts: [u8; 16],
    slots: Vec<Slot>,
    /// Slot indices per RSV byte, in slot order. Duplicate-free tables
    /// have at most one entry per RSV; rewritten tables may have more.
    by_rsv: Vec<Vec<u16>>,
}

/// Build the canonical assignment for `counts` (L1..L16) over `values`.
///
/// Slot `i` receives the `i`-th canonical code. Fails if the counts do not
/// match the value list length or violate Kraft feasibility.
pub fn build_canonical(counts: [u8; 16], values: &[Rsv]) -> Result<Assignment> {
    let total: usize = counts.iter().map(|&c| c as usize).sum();
    if total != values.len() {
        return Err(Error::InvalidCounts(format!(
            "counts sum to {total} but {} values given",
            values.len()
        )));
    }
    if total == 0 {
        return Err(Error::InvalidCounts("empty table".into()));
    }

    let mut slots = Vec::with_capacity(total);
    let mut code: u32 = 0;
    let mut next = values.iter();
    for (len_minus_1, &count) in counts.iter().enumerate() {
        let length = len_minus_1 as u8 + 1;
        for _ in 0..count {
            if code >= 1u32 << length {
                return Err(Error::InvalidCounts(format!(
                    "too many codes of length <= {length}"
                )));
            }
            slots.push(Slot {
                rsv: *next.next().expect("length checked above"),
                code: code as u16,
                length,
            });
            code += 1;
        }
        code <<= 1;
    }

    let mut by_rsv = vec![Vec::new(); 256];
    for (i, slot) in slots.iter().enumerate() {
        by_rsv[slot.rsv.0 as usize].push(i as u16);
    }

    Ok(Assignment {
        counts,
        slots,
        by_rsv,
    })
}

impl Assignment {
    pub fn counts(&self) -> &[u8; 16] {
        &self.counts
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    /// Slot-ordered value bytes, exactly as they appear in a DHT segment.
    pub fn value_bytes(&self) -> Vec<u8> {
        self.slots.iter().map(|s| s.rsv.0).collect()
    }

    /// Code length of slot `i`. Lengths are non-decreasing in `i`.
    pub fn slot_length(&self, i: usize) -> u8 {
        self.slots[i].length
    }

    /// All slot indices holding `rsv`, in slot order.
    pub fn slots_for(&self, rsv: Rsv) -> &[u16] {
        &self.by_rsv[rsv.0 as usize]
    }

    /// The code of the `selector`-th slot holding `rsv` (slot-index order,
    /// selector 0 being the lowest slot).
    pub fn code_for_rsv(&self, rsv: Rsv, selector: u8) -> Result<Slot> {
        self.slots_for(rsv)
            .get(selector as usize)
            .map(|&i| self.slots[i as usize])
            .ok_or(Error::MissingCode {
                rsv: rsv.0,
                selector,
            })
    }

    /// True when no RSV occupies more than one slot.
    pub fn is_duplicate_free(&self) -> bool {
        self.by_rsv.iter().all(|v| v.len() <= 1)
    }

    /// Same counts, new value list.
    pub fn with_values(&self, values: &[Rsv]) -> Result<Assignment> {
        build_canonical(self.counts, values)
    }
}

/// Bit-serial decoder for one assignment, using the usual per-length
/// min-code/max-code tables.
#[derive(Debug, Clone)]
pub struct Decoder {
    // Per code length 1..=16 (index 0 = length 1).
    min_code: [u32; 16],
    max_code: [i64; 16],
    val_ptr: [u32; 16],
}

impl Decoder {
    pub fn new(assignment: &Assignment) -> Decoder {
        let mut min_code = [0u32; 16];
        let mut max_code = [-1i64; 16];
        let mut val_ptr = [0u32; 16];
        let mut code: u32 = 0;
        let mut slot: u32 = 0;
        for len in 0..16 {
            let count = assignment.counts[len] as u32;
            if count > 0 {
                val_ptr[len] = slot;
                min_code[len] = code;
                code += count;
                slot += count;
                max_code[len] = i64::from(code) - 1;
            }
            code <<= 1;
        }
        Decoder {
            min_code,
            max_code,
            val_ptr,
        }
    }

    /// Decode one symbol by pulling bits from `next_bit`; returns the slot
    /// index. Errors if no code matches within 16 bits.
    pub fn decode_slot(&self, mut next_bit: impl FnMut() -> Result<u8>) -> Result<usize> {
        let mut code: u32 = 0;
        for len in 0..16 {
            code = (code << 1) | u32::from(next_bit()?);
            if i64::from(code) <= self.max_code[len] {
                return Ok((self.val_ptr[len] + code - self.min_code[len]) as usize);
            }
        }
        Err(Error::MalformedStream("undecodable VLC prefix".into()))
    }
}

/// Huffman table class as stored in a DHT segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableClass {
    Dc,
    Ac,
}

impl TableClass {
    pub fn from_nibble(n: u8) -> Result<TableClass> {
        match n {
            0 => Ok(TableClass::Dc),
            1 => Ok(TableClass::Ac),
            _ => Err(Error::MalformedStream(format!("bad table class {n}"))),
        }
    }

    pub fn nibble(self) -> u8 {
        match self {
            TableClass::Dc => 0,
            TableClass::Ac => 1,
        }
    }
}

/// The assignments in effect for one file: up to four DC and four AC
/// tables, indexed by table id.
#[derive(Debug, Clone, Default)]
pub struct TableSet {
    dc: [Option<Assignment>; 4],
    ac: [Option<Assignment>; 4],
}

impl TableSet {
    pub fn set(&mut self, class: TableClass, id: u8, assignment: Assignment) {
        match class {
            TableClass::Dc => self.dc[id as usize] = Some(assignment),
            TableClass::Ac => self.ac[id as usize] = Some(assignment),
        }
    }

    pub fn get(&self, class: TableClass, id: u8) -> Option<&Assignment> {
        match class {
            TableClass::Dc => self.dc[id as usize].as_ref(),
            TableClass::Ac => self.ac[id as usize].as_ref(),
        }
    }

    pub fn require(&self, class: TableClass, id: u8) -> Result<&Assignment> {
        self.get(class, id).ok_or_else(|| {
            Error::MalformedStream(format!(
                "scan references undefined {class:?} table {id}"
            ))
        })
    }

    /// Ids of the AC tables present in the set.
    pub fn ac_ids(&self) -> impl Iterator<Item = u8> + '_ {
        (0u8..4).filter(|&i| self.ac[i as usize].is_some())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rsvs(bytes: &[u8]) -> Vec<Rsv> {
        bytes.iter().map(|&b| Rsv(b)).collect()
    }

    #[test]
    fn canonical_codes_small_table() {
        // L2=1, L3=2 over three values.
        let mut counts = [0u8; 16];
        counts[1] = 1;
        counts[2] = 2;
        let a = build_canonical(counts, &rsvs(&[0x0A, 0x0B, 0x0C])).unwrap();
        let got: Vec<(u16, u8)> = a.slots().iter().map(|s| (s.code, s.length)).collect();
        assert_eq!(got, vec![(0b00, 2), (0b010, 3), (0b011, 3)]);
    }

    #[test]
    fn count_mismatch_rejected() {
        let mut counts = [0u8; 16];
        counts[1] = 2;
        let err = build_canonical(counts, &rsvs(&[0x01])).unwrap_err();
        assert!(matches!(err, Error::InvalidCounts(_)));
    }

    #[test]
    fn kraft_violation_rejected() {
        // Three codes of length 1 cannot exist.
        let mut counts = [0u8; 16];
        counts[0] = 3;
        let err = build_canonical(counts, &rsvs(&[0x01, 0x02, 0x03])).unwrap_err();
        assert!(matches!(err, Error::InvalidCounts(_)));
    }

    #[test]
    fn code_for_rsv_selector_order() {
        // RSV 0x05 duplicated in slots 1 and 2.
        let mut counts = [0u8; 16];
        counts[1] = 1;
        counts[2] = 2;
        let a = build_canonical(counts, &rsvs(&[0x01, 0x05, 0x05])).unwrap();
        assert_eq!(a.code_for_rsv(Rsv(0x05), 0).unwrap().code, 0b010);
        assert_eq!(a.code_for_rsv(Rsv(0x05), 1).unwrap().code, 0b011);
        assert!(matches!(
            a.code_for_rsv(Rsv(0x05), 2),
            Err(Error::MissingCode { rsv: 0x05, selector: 2 })
        ));
        assert!(matches!(
            a.code_for_rsv(Rsv(0x07), 0),
            Err(Error::MissingCode { .. })
        ));
        assert!(!a.is_duplicate_free());
    }

    #[test]
    fn prefix_freedom_exhaustive() {
        let table = crate::tables::luminance_ac().unwrap();
        let slots = table.slots();
        for (i, a) in slots.iter().enumerate() {
            for b in &slots[i + 1..] {
                let shorter = a.length.min(b.length);
                let pa = a.code >> (a.length - shorter);
                let pb = b.code >> (b.length - shorter);
                assert!(
                    !(pa == pb),
                    "{:0w$b} is a prefix of {:0v$b}",
                    a.code,
                    b.code,
                    w = a.length as usize,
                    v = b.length as usize
                );
            }
        }
    }

    #[test]
    fn decoder_inverts_encoder() {
        let table = crate::tables::chrominance_ac().unwrap();
        let decoder = Decoder::new(&table);
        for (i, slot) in table.slots().iter().enumerate() {
            let mut bits: Vec<u8> = (0..slot.length)
                .rev()
                .map(|k| ((slot.code >> k) & 1) as u8)
                .collect();
            bits.reverse(); // consume from the end
            let got = decoder
                .decode_slot(|| Ok(bits.pop().expect("enough bits")))
                .unwrap();
            assert_eq!(got, i);
            assert!(bits.is_empty());
        }
    }

    #[test]
    fn determinism() {
        let a = crate::tables::luminance_ac().unwrap();
        let b = crate::tables::luminance_ac().unwrap();
        assert_eq!(a, b);
    }
}
