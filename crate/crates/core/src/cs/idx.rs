//! Reader and writer for IDX3 unsigned-byte image files (the MNIST format).

use std::io::{ErrorKind, Read, Write};

use super::image::GrayImage;
use crate::error::{domain, Error, Result};

pub const IDX3_UBYTE_MAGIC: u32 = 0x0000_0803;

fn read_u32(src: &mut impl Read, what: &str) -> Result<u32> {
    let mut buf = [0u8; 4];
    src.read_exact(&mut buf).map_err(|e| truncated(e, what))?;
    Ok(u32::from_be_bytes(buf))
}

fn truncated(e: std::io::Error, what: &str) -> Error {
    if e.kind() == ErrorKind::UnexpectedEof {
        Error::Format(format!("stream ends inside {what}"))
    } else {
        Error::Io(e)
    }
}

/// Reads the first `count` images of an IDX3 stream.
pub fn load_idx_images(mut src: impl Read, count: usize) -> Result<Vec<GrayImage>> {
    let magic = read_u32(&mut src, "the magic number")?;
    if magic != IDX3_UBYTE_MAGIC {
        return Err(Error::Format(format!(
            "magic {magic:#010x} is not IDX3 unsigned-byte ({IDX3_UBYTE_MAGIC:#010x})"
        )));
    }
    let available = read_u32(&mut src, "the header")? as usize;
    let rows = read_u32(&mut src, "the header")?;
    let cols = read_u32(&mut src, "the header")?;
    if count > available {
        return Err(domain(format!(
            "requested {count} images but the file holds {available}"
        )));
    }
    let size = (rows as usize)
        .checked_mul(cols as usize)
        .filter(|&n| n <= 1 << 24)
        .ok_or_else(|| Error::Format(format!("implausible image size {rows}x{cols}")))?;
    let mut buf = vec![0u8; size];
    (0..count)
        .map(|i| {
            src.read_exact(&mut buf)
                .map_err(|e| truncated(e, &format!("image {i}")))?;
            GrayImage::from_bytes(cols, rows, &buf)
        })
        .collect()
}

/// Writes images as an IDX3 stream. Pixels are rounded and clamped to bytes.
pub fn write_idx_images(mut dst: impl Write, images: &[GrayImage]) -> Result<()> {
    let (w, h) = images.first().map_or((0, 0), |i| (i.width(), i.height()));
    if images.iter().any(|i| (i.width(), i.height()) != (w, h)) {
        return Err(domain("all images in an IDX file must share dimensions"));
    }
    for v in [IDX3_UBYTE_MAGIC, images.len() as u32, h, w] {
        dst.write_all(&v.to_be_bytes())?;
    }
    for img in images {
        let bytes: Vec<u8> = img
            .pixels()
            .iter()
            .map(|p| p.round().clamp(0.0, 255.0) as u8)
            .collect();
        dst.write_all(&bytes)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn header(n: u32, rows: u32, cols: u32) -> Vec<u8> {
        let mut out = vec![0x00, 0x00, 0x08, 0x03];
        for v in [n, rows, cols] {
            out.extend_from_slice(&v.to_be_bytes());
        }
        out
    }

    #[test]
    fn reads_images() {
        let mut bytes = header(2, 28, 28);
        bytes.extend((0..2 * 784).map(|i| (i % 251) as u8));
        let imgs = load_idx_images(bytes.as_slice(), 2).unwrap();
        assert_eq!(imgs.len(), 2);
        assert_eq!((imgs[1].width(), imgs[1].height()), (28, 28));
        assert_eq!(imgs[0].get(1, 0), 1.0);
        assert_eq!(imgs[1].get(0, 0), (784 % 251) as f64);
        assert!(load_idx_images(bytes.as_slice(), 0).unwrap().is_empty());
    }

    #[test]
    fn rejects_bad_streams() {
        let mut wrong = header(1, 2, 2);
        wrong[3] = 0x01;
        wrong.extend([0; 4]);
        assert!(matches!(
            load_idx_images(wrong.as_slice(), 1),
            Err(Error::Format(_))
        ));
        let mut short = header(2, 28, 28);
        short.extend([0; 800]);
        assert!(matches!(
            load_idx_images(short.as_slice(), 2),
            Err(Error::Format(_))
        ));
        assert!(matches!(
            load_idx_images(&[0u8, 0, 8][..], 0),
            Err(Error::Format(_))
        ));
        assert!(matches!(
            load_idx_images(header(1, 1, 1).as_slice(), 3),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn write_then_read() {
        let imgs: Vec<GrayImage> = (0..3)
            .map(|k| GrayImage::from_bytes(4, 3, &[k as u8 * 10; 12]).unwrap())
            .collect();
        let mut buf = Vec::new();
        write_idx_images(&mut buf, &imgs).unwrap();
        assert_eq!(&buf[..4], &[0, 0, 8, 3]);
        assert_eq!(load_idx_images(buf.as_slice(), 3).unwrap(), imgs);
    }
}
