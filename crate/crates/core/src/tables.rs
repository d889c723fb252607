//! The typical Huffman tables from ITU-T T.81 Annex K, used as the
//! restoration reference for files written with default-table encoders.

use crate::error::{Error, Result};
use crate::huffman::{build_canonical, Assignment, Rsv, TableClass, TableSet};

pub const DC_LUMINANCE_COUNTS: [u8; 16] = [0, 1, 5, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0];
pub const DC_LUMINANCE_VALUES: [u8; 12] = [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11];

pub const DC_CHROMINANCE_COUNTS: [u8; 16] = [0, 3, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0];
pub const DC_CHROMINANCE_VALUES: [u8; 12] = [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11];

pub const AC_LUMINANCE_COUNTS: [u8; 16] =
    [0, 2, 1, 3, 3, 2, 4, 3, 5, 5, 4, 4, 0, 0, 1, 0x7D];
pub const AC_LUMINANCE_VALUES: [u8; 162] = [
    0x01, 0x02, 0x03, 0x00, 0x04, 0x11, 0x05, 0x12, 0x21, 0x31, 0x41, 0x06, 0x13, 0x51, 0x61,
    0x07, 0x22, 0x71, 0x14, 0x32, 0x81, 0x91, 0xA1, 0x08, 0x23, 0x42, 0xB1, 0xC1, 0x15, 0x52,
    0xD1, 0xF0, 0x24, 0x33, 0x62, 0x72, 0x82, 0x09, 0x0A, 0x16, 0x17, 0x18, 0x19, 0x1A, 0x25,
    0x26, 0x27, 0x28, 0x29, 0x2A, 0x34, 0x35, 0x36, 0x37, 0x38, 0x39, 0x3A, 0x43, 0x44, 0x45,
    0x46, 0x47, 0x48, 0x49, 0x4A, 0x53, 0x54, 0x55, 0x56, 0x57, 0x58, 0x59, 0x5A, 0x63, 0x64,
    0x65, 0x66, 0x67, 0x68, 0x69, 0x6A, 0x73, 0x74, 0x75, 0x76, 0x77, 0x78, 0x79, 0x7A, 0x83,
    0x84, 0x85, 0x86, 0x87, 0x88, 0x89, 0x8A, 0x92, 0x93, 0x94, 0x95, 0x96, 0x97, 0x98, 0x99,
    0x9A, 0xA2, 0xA3, 0xA4, 0xA5, 0xA6, 0xA7, 0xA8, 0xA9, 0xAA, 0xB2, 0xB3, 0xB4, 0xB5, 0xB6,
    0xB7, 0xB8, 0xB9, 0xBA, 0xC2, 0xC3, 0xC4, 0xC5, 0xC6, 0xC7, 0xC8, 0xC9, 0xCA, 0xD2, 0xD3,
    0xD4, 0xD5, 0xD6, 0xD7, 0xD8, 0xD9, 0xDA, 0xE1, 0xE2, 0xE3, 0xE4, 0xE5, 0xE6, 0xE7, 0xE8,
    0xE9, 0xEA, 0xF1, 0xF2, 0xF3, 0xF4, 0xF5, 0xF6, 0xF7, 0xF8, 0xF9, 0xFA,
];

pub const AC_CHROMINANCE_COUNTS: [u8; 16] =
    [0, 2, 1, 2, 4, 4, 3, 4, 7, 5, 4, 4, 0, 1, 2, 0x77];
pub const AC_CHROMINANCE_VALUES: [u8; 162] = [
    0x00, 0x01, 0x02, 0x03, 0x11, 0x04, 0x05, 0x21, 0x31, 0x06, 0x12, 0x41, 0x51, 0x07, 0x61,
    0x71, 0x13, 0x22, 0x32, 0x81, 0x08, 0x14, 0x42, 0x91, 0xA1, 0xB1, 0xC1, 0x09, 0x23, 0x33,
    0x52, 0xF0, 0x15, 0x62, 0x72, 0xD1, 0x0A, 0x16, 0x24, 0x34, 0xE1, 0x25, 0xF1, 0x17, 0x18,
    0x19, 0x1A, 0x26, 0x27, 0x28, 0x29, 0x2A, 0x35, 0x36, 0x37, 0x38, 0x39, 0x3A, 0x43, 0x44,
    0x45, 0x46, 0x47, 0x48, 0x49, 0x4A, 0x53, 0x54, 0x55, 0x56, 0x57, 0x58, 0x59, 0x5A, 0x63,
    0x64, 0x65, 0x66, 0x67, 0x68, 0x69, 0x6A, 0x73, 0x74, 0x75, 0x76, 0x77, 0x78, 0x79, 0x7A,
    0x82, 0x83, 0x84, 0x85, 0x86, 0x87, 0x88, 0x89, 0x8A, 0x92, 0x93, 0x94, 0x95, 0x96, 0x97,
    0x98, 0x99, 0x9A, 0xA2, 0xA3, 0xA4, 0xA5, 0xA6, 0xA7, 0xA8, 0xA9, 0xAA, 0xB2, 0xB3, 0xB4,
    0xB5, 0xB6, 0xB7, 0xB8, 0xB9, 0xBA, 0xC2, 0xC3, 0xC4, 0xC5, 0xC6, 0xC7, 0xC8, 0xC9, 0xCA,
    0xD2, 0xD3, 0xD4, 0xD5, 0xD6, 0xD7, 0xD8, 0xD9, 0xDA, 0xE2, 0xE3, 0xE4, 0xE5, 0xE6, 0xE7,
    0xE8, 0xE9, 0xEA, 0xF2, 0xF3, 0xF4, 0xF5, 0xF6, 0xF7, 0xF8, 0xF9, 0xFA,
];

fn build(counts: [u8; 16], values: &[u8]) -> Result<Assignment> {
    let values: Vec<Rsv> = values.iter().map(|&b| Rsv(b)).collect();
    build_canonical(counts, &values)
}

pub fn luminance_dc() -> Result<Assignment> {
    build(DC_LUMINANCE_COUNTS, &DC_LUMINANCE_VALUES)
}

pub fn chrominance_dc() -> Result<Assignment> {
    build(DC_CHROMINANCE_COUNTS, &DC_CHROMINANCE_VALUES)
}

pub fn luminance_ac() -> Result<Assignment> {
    build(AC_LUMINANCE_COUNTS, &AC_LUMINANCE_VALUES)
}

pub fn chrominance_ac() -> Result<Assignment> {
    build(AC_CHROMINANCE_COUNTS, &AC_CHROMINANCE_VALUES)
}

/// The full default set: luminance tables as id 0, chrominance as id 1.
pub fn default_table_set() -> Result<TableSet> {
    let mut set = TableSet::default();
    set.set(TableClass::Dc, 0, luminance_dc()?);
    set.set(TableClass::Dc, 1, chrominance_dc()?);
    set.set(TableClass::Ac, 0, luminance_ac()?);
    set.set(TableClass::Ac, 1, chrominance_ac()?);
    Ok(set)
}

/// Parse raw DHT table definitions (the segment payload, without the
/// FFC4 marker and length) into a table set. Accepts several concatenated
/// definitions, as a DHT payload does.
pub fn table_set_from_dht_payload(payload: &[u8]) -> Result<TableSet> {
    let mut set = TableSet::default();
    let mut pos = 0usize;
    if payload.is_empty() {
        return Err(Error::MalformedStream("empty table definition".into()));
    }
    while pos < payload.len() {
        if pos + 17 > payload.len() {
            return Err(Error::MalformedStream("truncated table definition".into()));
        }
        let tc_th = payload[pos];
        let class = TableClass::from_nibble(tc_th >> 4)?;
        let id = tc_th & 0x0F;
        if id > 3 {
            return Err(Error::MalformedStream(format!("bad table id {id}")));
        }
        let mut counts = [0u8; 16];
        counts.copy_from_slice(&payload[pos + 1..pos + 17]);
        let total: usize = counts.iter().map(|&c| c as usize).sum();
        pos += 17;
        if pos + total > payload.len() {
            return Err(Error::MalformedStream("truncated table values".into()));
        }
        let assignment = build(counts, &payload[pos..pos + total])?;
        set.set(class, id, assignment);
        pos += total;
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn annex_k_tables_build() {
        let lum = luminance_ac().unwrap();
        assert_eq!(lum.len(), 162);
        // The first luminance AC slot is the length-2 code "00" for RSV 0x01.
        let first = lum.slots()[0];
        assert_eq!((first.rsv, first.code, first.length), (Rsv(0x01), 0b00, 2));
        assert!(lum.is_duplicate_free());

        let chr = chrominance_ac().unwrap();
        assert_eq!(chr.len(), 162);
        assert!(chr.is_duplicate_free());
        assert_eq!(luminance_dc().unwrap().len(), 12);
        assert_eq!(chrominance_dc().unwrap().len(), 12);
    }

    #[test]
    fn dht_payload_round_trip() {
        let mut payload = vec![0x10]; // AC table 0
        payload.extend_from_slice(&AC_LUMINANCE_COUNTS);
        payload.extend_from_slice(&AC_LUMINANCE_VALUES);
        let set = table_set_from_dht_payload(&payload).unwrap();
        assert_eq!(
            set.get(TableClass::Ac, 0).unwrap(),
            &luminance_ac().unwrap()
        );
        assert!(set.get(TableClass::Dc, 0).is_none());
    }

    #[test]
    fn truncated_payload_rejected() {
        let payload = vec![0x10, 0, 0, 1];
        assert!(table_set_from_dht_payload(&payload).is_err());
    }
}
