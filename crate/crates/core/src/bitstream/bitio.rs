//! MSB-first bit I/O over the entropy-coded segment, handling 0xFF byte
//! stuffing and the padding bits that precede byte-aligned markers.

use crate::error::{Error, Result};

/// The bits that fill a partial byte up to the next byte boundary.
///
/// Captured verbatim at parse time so that re-serialization can reproduce
/// encoders that do not pad with 1-bits. When the bit phase at an align
/// point differs from the recorded one, the conventional 1-bits are used
/// instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Pad {
    pub len: u8,
    pub bits: u8,
}

impl Pad {
    pub fn ones(len: u8) -> Pad {
        Pad {
            len,
            bits: ((1u16 << len) - 1) as u8,
        }
    }

    pub fn is_all_ones(&self) -> bool {
        self.bits == ((1u16 << self.len) - 1) as u8
    }
}

/// Reader over the scan bytes of a JPEG file. Un-stuffs 0xFF 0x00 pairs
/// and refuses to read bits across a marker.
pub struct BitReader<'a> {
    data: &'a [u8],
    pos: usize,
    buf: u8,
    bits_left: u8,
}

impl<'a> BitReader<'a> {
    pub fn new(data: &'a [u8], start: usize) -> BitReader<'a> {
        BitReader {
            data,
            pos: start,
            buf: 0,
            bits_left: 0,
        }
    }

    fn load_byte(&mut self) -> Result<()> {
        let b = *self
            .data
            .get(self.pos)
            .ok_or_else(|| Error::MalformedStream("scan data truncated".into()))?;
        if b == 0xFF {
            match self.data.get(self.pos + 1) {
                Some(0x00) => self.pos += 2, // stuffing byte, not data
                Some(_) => {
                    return Err(Error::MalformedStream(
                        "marker interrupts entropy-coded data".into(),
                    ))
                }
                None => return Err(Error::MalformedStream("scan data truncated".into())),
            }
        } else {
            self.pos += 1;
        }
        self.buf = b;
        self.bits_left = 8;
        Ok(())
    }

    pub fn next_bit(&mut self) -> Result<u8> {
        if self.bits_left == 0 {
            self.load_byte()?;
        }
        self.bits_left -= 1;
        Ok((self.buf >> self.bits_left) & 1)
    }

    /// Read `n` bits (n <= 16) MSB-first.
    pub fn read_bits(&mut self, n: u8) -> Result<u16> {
        debug_assert!(n <= 16);
        let mut v: u16 = 0;
        for _ in 0..n {
            v = (v << 1) | u16::from(self.next_bit()?);
        }
        Ok(v)
    }

    /// Discard the rest of the current byte and return it as padding.
    pub fn align_capture_pad(&mut self) -> Pad {
        let pad = Pad {
            len: self.bits_left,
            bits: self.buf & (((1u16 << self.bits_left) - 1) as u8),
        };
        self.bits_left = 0;
        pad
    }

    /// Read a two-byte marker at the current (aligned) position and return
    /// its second byte.
    pub fn expect_marker(&mut self) -> Result<u8> {
        debug_assert_eq!(self.bits_left, 0);
        if self.pos + 1 >= self.data.len() {
            return Err(Error::MalformedStream("scan ends without marker".into()));
        }
        if self.data[self.pos] != 0xFF {
            return Err(Error::MalformedStream("expected marker after scan".into()));
        }
        let m = self.data[self.pos + 1];
        self.pos += 2;
        Ok(m)
    }

    pub fn position(&self) -> usize {
        self.pos
    }
}

/// Writer producing entropy-coded bytes with 0xFF stuffing.
#[derive(Debug, Default)]
pub struct BitWriter {
    out: Vec<u8>,
    acc: u32,
    nbits: u8,
    stuffed_zeros: usize,
}

impl BitWriter {
    pub fn new() -> BitWriter {
        BitWriter::default()
    }

    pub fn write_bits(&mut self, value: u32, n: u8) {
        debug_assert!(n <= 24);
        if n == 0 {
            return;
        }
        self.acc = (self.acc << n) | (value & ((1u32 << n) - 1));
        self.nbits += n;
        while self.nbits >= 8 {
            self.nbits -= 8;
            let byte = (self.acc >> self.nbits) as u8;
            self.out.push(byte);
            if byte == 0xFF {
                self.out.push(0x00);
                self.stuffed_zeros += 1;
            }
        }
    }

    /// Complete the current byte using `pad` when its width matches the
    /// open bit count, 1-bits otherwise.
    pub fn align_with(&mut self, pad: Pad) {
        if self.nbits == 0 {
            return;
        }
        let needed = 8 - self.nbits;
        let bits = if pad.len == needed {
            u32::from(pad.bits)
        } else {
            (1u32 << needed) - 1
        };
        self.write_bits(bits, needed);
    }

    /// Append marker bytes verbatim; the stream must be byte-aligned.
    pub fn push_marker(&mut self, marker: u8) {
        debug_assert_eq!(self.nbits, 0);
        self.out.push(0xFF);
        self.out.push(marker);
    }

    pub fn stuffed_zeros(&self) -> usize {
        self.stuffed_zeros
    }

    pub fn into_bytes(self) -> Vec<u8> {
        debug_assert_eq!(self.nbits, 0, "unaligned bit writer");
        self.out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stuffing_round_trip() {
        let mut w = BitWriter::new();
        w.write_bits(0xFF, 8);
        w.write_bits(0xA5, 8);
        assert_eq!(w.stuffed_zeros(), 1);
        let bytes = w.into_bytes();
        assert_eq!(bytes, vec![0xFF, 0x00, 0xA5]);

        let mut r = BitReader::new(&bytes, 0);
        assert_eq!(r.read_bits(8).unwrap(), 0xFF);
        assert_eq!(r.read_bits(8).unwrap(), 0xA5);
    }

    #[test]
    fn pad_captured_and_replayed() {
        // Five data bits, three padding bits of 0b010 (nonstandard).
        let mut r = BitReader::new(&[0b10110_010], 0);
        assert_eq!(r.read_bits(5).unwrap(), 0b10110);
        let pad = r.align_capture_pad();
        assert_eq!(pad, Pad { len: 3, bits: 0b010 });
        assert!(!pad.is_all_ones());

        let mut w = BitWriter::new();
        w.write_bits(0b10110, 5);
        w.align_with(pad);
        assert_eq!(w.into_bytes(), vec![0b10110_010]);

        // Phase mismatch falls back to 1-bits.
        let mut w = BitWriter::new();
        w.write_bits(0b1011, 4);
        w.align_with(pad);
        assert_eq!(w.into_bytes(), vec![0b1011_1111]);
    }

    #[test]
    fn marker_stops_bit_reads() {
        let data = [0b1010_0000, 0xFF, 0xD9];
        let mut r = BitReader::new(&data, 0);
        assert_eq!(r.read_bits(8).unwrap(), 0b1010_0000);
        assert!(r.next_bit().is_err());
    }

    #[test]
    fn padded_ff_consumes_stuffing() {
        // A final byte of 0xFF (data + 1-padding) is followed by a
        // stuffing zero before the marker.
        let data = [0xFF, 0x00, 0xFF, 0xD9];
        let mut r = BitReader::new(&data, 0);
        assert_eq!(r.read_bits(3).unwrap(), 0b111);
        let pad = r.align_capture_pad();
        assert_eq!(pad, Pad { len: 5, bits: 0b11111 });
        assert_eq!(r.expect_marker().unwrap(), 0xD9);
    }
}
