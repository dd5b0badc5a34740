//! Binary field dumps.
//!
//! Layout, all little-endian:
//!
//! | bytes | content |
//! |-------|---------|
//! | 8     | magic `SWLFIELD` |
//! | 4     | format version (`u32`, currently 1) |
//! | 4     | reserved, zero |
//! | 16    | grid dimensions, four `u32` |
//! | 1     | kind: 1 = `S⁺` spinor, 2 = `S⁻`, 3 = full, 4 = gauge, 5 = two-form, 6 = sector spinor |
//! | …     | kind 5: one class byte (0 real, 1 imaginary, 2 complex); kind 6: `i32` holding `2q` |
//! | …     | site-major samples, per site every component as `(re, im)` `f64` pairs |
//! | 32    | kind 4 only: four holonomy `f64` |
//!
//! Gauge samples are the mean-free oscillatory parts (imaginary part zero).

use std::io::{Read, Write};

use super::{Chirality, GaugeField, Grid4, SpinorField, TwoFormField};
use crate::twoform::ValueClass;
use crate::{Charge, Error, Result, C64};

pub const MAGIC: &[u8; 8] = b"SWLFIELD";
pub const VERSION: u32 = 1;

/// Anything that can be dumped.
#[derive(Clone, Debug, PartialEq)]
pub enum FieldDump {
    Spinor(SpinorField),
    Gauge(GaugeField),
    TwoForm(TwoFormField),
    /// Base field of a charge-sector spinor on `Y`.
    Sector { charge: Charge, base: SpinorField },
}

fn kind_byte(d: &FieldDump) -> u8 {
    match d {
        FieldDump::Spinor(s) => match s.chirality() {
            Chirality::Plus => 1,
            Chirality::Minus => 2,
            Chirality::Full => 3,
        },
        FieldDump::Gauge(_) => 4,
        FieldDump::TwoForm(_) => 5,
        FieldDump::Sector { .. } => 6,
    }
}

fn class_byte(c: ValueClass) -> u8 {
    match c {
        ValueClass::Real => 0,
        ValueClass::Imaginary => 1,
        ValueClass::Complex => 2,
    }
}

fn write_sites(w: &mut impl Write, comps: &[&[C64]], sites: usize) -> Result<()> {
    let mut buf = Vec::with_capacity(sites * comps.len() * 16);
    for i in 0..sites {
        for c in comps {
            buf.extend_from_slice(&c[i].re.to_le_bytes());
            buf.extend_from_slice(&c[i].im.to_le_bytes());
        }
    }
    w.write_all(&buf)?;
    Ok(())
}

pub fn write_field(w: &mut impl Write, d: &FieldDump) -> Result<()> {
    let grid = match d {
        FieldDump::Spinor(s) | FieldDump::Sector { base: s, .. } => s.grid(),
        FieldDump::Gauge(a) => a.grid(),
        FieldDump::TwoForm(f) => f.grid(),
    };
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&0u32.to_le_bytes())?;
    for _ in 0..4 {
        w.write_all(&(grid.n() as u32).to_le_bytes())?;
    }
    w.write_all(&[kind_byte(d)])?;
    let sites = grid.sites();
    match d {
        FieldDump::Spinor(s) => {
            let comps: Vec<&[C64]> = s.components().iter().map(|c| c.as_slice()).collect();
            write_sites(w, &comps, sites)?;
        }
        FieldDump::Sector { charge, base } => {
            w.write_all(&charge.twice().to_le_bytes())?;
            let comps: Vec<&[C64]> = base.components().iter().map(|c| c.as_slice()).collect();
            write_sites(w, &comps, sites)?;
        }
        FieldDump::TwoForm(f) => {
            w.write_all(&[class_byte(f.class())])?;
            let comps: Vec<&[C64]> = f.components().iter().map(|c| c.as_slice()).collect();
            write_sites(w, &comps, sites)?;
        }
        FieldDump::Gauge(a) => {
            let owned: Vec<Vec<C64>> = (0..4)
                .map(|mu| a.oscillatory(mu).iter().map(|&v| C64::new(v, 0.0)).collect())
                .collect();
            let comps: Vec<&[C64]> = owned.iter().map(|c| c.as_slice()).collect();
            write_sites(w, &comps, sites)?;
            for h in a.holonomy() {
                w.write_all(&h.to_le_bytes())?;
            }
        }
    }
    Ok(())
}

fn read_array<const K: usize>(r: &mut impl Read) -> Result<[u8; K]> {
    let mut b = [0u8; K];
    r.read_exact(&mut b)?;
    Ok(b)
}

fn read_sites(r: &mut impl Read, ncomp: usize, sites: usize) -> Result<Vec<Vec<C64>>> {
    let mut buf = vec![0u8; sites * ncomp * 16];
    r.read_exact(&mut buf)?;
    let mut comps = vec![Vec::with_capacity(sites); ncomp];
    for (k, chunk) in buf.chunks_exact(16).enumerate() {
        let re = f64::from_le_bytes(chunk[..8].try_into().expect("8 bytes"));
        let im = f64::from_le_bytes(chunk[8..].try_into().expect("8 bytes"));
        comps[k % ncomp].push(C64::new(re, im));
    }
    Ok(comps)
}

pub fn read_field(r: &mut impl Read) -> Result<FieldDump> {
    if &read_array::<8>(r)? != MAGIC {
        return Err(Error::Format("bad magic".into()));
    }
    let version = u32::from_le_bytes(read_array(r)?);
    if version != VERSION {
        return Err(Error::Format(format!("unsupported version {version}")));
    }
    let _reserved = read_array::<4>(r)?;
    let dims: Vec<u32> = (0..4)
        .map(|_| read_array(r).map(u32::from_le_bytes))
        .collect::<Result<_>>()?;
    if dims.iter().any(|&d| d != dims[0]) {
        return Err(Error::Format(format!("non-cubic grid {dims:?}")));
    }
    let grid = Grid4::new(dims[0] as usize)?;
    let sites = grid.sites();
    let [kind] = read_array::<1>(r)?;
    match kind {
        1..=3 => {
            let chirality = [Chirality::Plus, Chirality::Minus, Chirality::Full][kind as usize - 1];
            let comps = read_sites(r, chirality.arity(), sites)?;
            Ok(FieldDump::Spinor(SpinorField::from_components(grid, chirality, comps)?))
        }
        4 => {
            let comps = read_sites(r, 4, sites)?;
            let osc = std::array::from_fn(|mu| comps[mu].iter().map(|z| z.re).collect());
            let mut hol = [0.0; 4];
            for h in hol.iter_mut() {
                *h = f64::from_le_bytes(read_array(r)?);
            }
            Ok(FieldDump::Gauge(GaugeField::from_parts(grid, osc, hol)?))
        }
        5 => {
            let [c] = read_array::<1>(r)?;
            let class = match c {
                0 => ValueClass::Real,
                1 => ValueClass::Imaginary,
                2 => ValueClass::Complex,
                other => return Err(Error::Format(format!("unknown class byte {other}"))),
            };
            let mut comps = read_sites(r, 6, sites)?.into_iter();
            let arr = std::array::from_fn(|_| comps.next().expect("six components"));
            Ok(FieldDump::TwoForm(TwoFormField::from_components(grid, arr, class)?))
        }
        6 => {
            let twice = i32::from_le_bytes(read_array(r)?);
            let comps = read_sites(r, 4, sites)?;
            Ok(FieldDump::Sector {
                charge: Charge::from_twice(twice),
                base: SpinorField::from_components(grid, Chirality::Full, comps)?,
            })
        }
        other => Err(Error::Format(format!("unknown kind byte {other}"))),
    }
}

pub fn write_file(path: &std::path::Path, d: &FieldDump) -> Result<()> {
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_field(&mut f, d)?;
    f.flush()?;
    Ok(())
}

pub fn read_file(path: &std::path::Path) -> Result<FieldDump> {
    let mut f = std::io::BufReader::new(std::fs::File::open(path)?);
    read_field(&mut f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::{random_gauge, random_spinor, random_two_form};

    fn roundtrip(d: FieldDump) {
        let mut buf = Vec::new();
        write_field(&mut buf, &d).unwrap();
        assert_eq!(&buf[..8], MAGIC);
        let back = read_field(&mut buf.as_slice()).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn every_kind_roundtrips() {
        let g = Grid4::new(4).unwrap();
        roundtrip(FieldDump::Spinor(random_spinor(g, 1, 1, Chirality::Plus).unwrap()));
        roundtrip(FieldDump::Spinor(random_spinor(g, 2, 1, Chirality::Full).unwrap()));
        roundtrip(FieldDump::Gauge(random_gauge(g, 3, 1).unwrap()));
        roundtrip(FieldDump::TwoForm(random_two_form(g, 4, 1, ValueClass::Imaginary).unwrap()));
        roundtrip(FieldDump::Sector {
            charge: Charge::from_twice(-3),
            base: random_spinor(g, 5, 1, Chirality::Full).unwrap(),
        });
    }

    #[test]
    fn header_layout() {
        let g = Grid4::new(4).unwrap();
        let mut buf = Vec::new();
        write_field(&mut buf, &FieldDump::Spinor(SpinorField::zeros(g, Chirality::Minus))).unwrap();
        assert_eq!(u32::from_le_bytes(buf[8..12].try_into().unwrap()), 1);
        assert_eq!(u32::from_le_bytes(buf[16..20].try_into().unwrap()), 4);
        assert_eq!(buf[32], 2);
        assert_eq!(buf.len(), 33 + 256 * 2 * 16);
    }

    #[test]
    fn corrupt_input_is_rejected() {
        assert!(read_field(&mut &b"NOTADUMP0000"[..]).is_err());
        let g = Grid4::new(4).unwrap();
        let mut buf = Vec::new();
        write_field(&mut buf, &FieldDump::Spinor(SpinorField::zeros(g, Chirality::Plus))).unwrap();
        buf.truncate(100);
        assert!(read_field(&mut buf.as_slice()).is_err());
    }
}
