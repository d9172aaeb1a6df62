//! The image buffer type, the dtype/range contract and intensity histograms.
//!
//! 8-bit images hold values in `{0, ..., 255}`; floating point images hold
//! values in `[0, 1]`. Conversions between the two preserve relative
//! intensity. Pixels are stored row-major with channels interleaved.

use crate::error::{Error, Result};

/// Element kind of an [`ImageBuffer`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElemKind {
    U8,
    F32,
}

impl ElemKind {
    pub fn name(self) -> &'static str {
        match self {
            ElemKind::U8 => "u8",
            ElemKind::F32 => "f32",
        }
    }
}

/// Pixel storage, tagged by element kind.
#[derive(Debug, Clone, PartialEq)]
pub enum PixelData {
    U8(Vec<u8>),
    F32(Vec<f32>),
}

impl PixelData {
    fn len(&self) -> usize {
        match self {
            PixelData::U8(v) => v.len(),
            PixelData::F32(v) => v.len(),
        }
    }
}

/// Rectangular pixel array with 1, 3 or 4 interleaved channels.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageBuffer {
    height: usize,
    width: usize,
    channels: usize,
    data: PixelData,
}

impl ImageBuffer {
    pub fn new(height: usize, width: usize, channels: usize, data: PixelData) -> Result<Self> {
        if height == 0 || width == 0 {
            return Err(Error::InvalidShape(format!(
                "dimensions must be positive, got {height}x{width}"
            )));
        }
        if !matches!(channels, 1 | 3 | 4) {
            return Err(Error::InvalidShape(format!(
                "channels must be 1, 3 or 4, got {channels}"
            )));
        }
        let expected = height * width * channels;
        if data.len() != expected {
            return Err(Error::InvalidShape(format!(
                "data length {} does not match {height}x{width}x{channels}",
                data.len()
            )));
        }
        Ok(Self {
            height,
            width,
            channels,
            data,
        })
    }

    pub fn from_u8(height: usize, width: usize, channels: usize, data: Vec<u8>) -> Result<Self> {
        Self::new(height, width, channels, PixelData::U8(data))
    }

    pub fn from_f32(height: usize, width: usize, channels: usize, data: Vec<f32>) -> Result<Self> {
        Self::new(height, width, channels, PixelData::F32(data))
    }

    /// Single channel float image built from a per-pixel function.
    pub fn from_fn_f32(height: usize, width: usize, mut f: impl FnMut(usize, usize) -> f32) -> Result<Self> {
        let mut data = Vec::with_capacity(height * width);
        for r in 0..height {
            for c in 0..width {
                data.push(f(r, c));
            }
        }
        Self::from_f32(height, width, 1, data)
    }

    /// Single channel 8-bit image built from a per-pixel function.
    pub fn from_fn_u8(height: usize, width: usize, mut f: impl FnMut(usize, usize) -> u8) -> Result<Self> {
        let mut data = Vec::with_capacity(height * width);
        for r in 0..height {
            for c in 0..width {
                data.push(f(r, c));
            }
        }
        Self::from_u8(height, width, 1, data)
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    /// `(rows, cols)`
    pub fn shape(&self) -> (usize, usize) {
        (self.height, self.width)
    }

    pub fn elem_kind(&self) -> ElemKind {
        match self.data {
            PixelData::U8(_) => ElemKind::U8,
            PixelData::F32(_) => ElemKind::F32,
        }
    }

    pub fn data(&self) -> &PixelData {
        &self.data
    }

    pub fn into_data(self) -> PixelData {
        self.data
    }

    pub fn as_u8(&self) -> Option<&[u8]> {
        match &self.data {
            PixelData::U8(v) => Some(v),
            PixelData::F32(_) => None,
        }
    }

    pub fn as_f32(&self) -> Option<&[f32]> {
        match &self.data {
            PixelData::F32(v) => Some(v),
            PixelData::U8(_) => None,
        }
    }

    fn index(&self, row: usize, col: usize, channel: usize) -> usize {
        (row * self.width + col) * self.channels + channel
    }

    /// Sample value on the float scale (`u8` values divided by 255).
    pub fn get(&self, row: usize, col: usize, channel: usize) -> f32 {
        let i = self.index(row, col, channel);
        match &self.data {
            PixelData::U8(v) => v[i] as f32 / 255.0,
            PixelData::F32(v) => v[i],
        }
    }

    /// Sample value in the image's own units (0..=255 for `u8`).
    pub fn get_native(&self, row: usize, col: usize, channel: usize) -> f64 {
        let i = self.index(row, col, channel);
        match &self.data {
            PixelData::U8(v) => v[i] as f64,
            PixelData::F32(v) => v[i] as f64,
        }
    }

    pub(crate) fn require_channels(&self, op: &'static str, channels: usize) -> Result<()> {
        if self.channels == channels {
            return Ok(());
        }
        let expected = match channels {
            1 => "single channel",
            3 => "3 channels",
            _ => "4 channels",
        };
        Err(Error::Channels { op, expected })
    }

    /// One channel on the float scale, as a flat row-major vector.
    pub(crate) fn channel_f32(&self, channel: usize) -> Vec<f32> {
        let n = self.height * self.width;
        let mut out = Vec::with_capacity(n);
        for p in 0..n {
            let i = p * self.channels + channel;
            out.push(match &self.data {
                PixelData::U8(v) => v[i] as f32 / 255.0,
                PixelData::F32(v) => v[i],
            });
        }
        out
    }

    /// Single channel values in native units, widened to `f64`.
    pub(crate) fn native_plane(&self) -> Vec<f64> {
        match &self.data {
            PixelData::U8(v) => v.iter().map(|&x| x as f64).collect(),
            PixelData::F32(v) => v.iter().map(|&x| x as f64).collect(),
        }
    }

    /// Minimum and maximum sample in native units.
    pub fn min_max(&self) -> (f64, f64) {
        let fold = |(lo, hi): (f64, f64), x: f64| (lo.min(x), hi.max(x));
        match &self.data {
            PixelData::U8(v) => v
                .iter()
                .map(|&x| x as f64)
                .fold((f64::INFINITY, f64::NEG_INFINITY), fold),
            PixelData::F32(v) => v
                .iter()
                .map(|&x| x as f64)
                .fold((f64::INFINITY, f64::NEG_INFINITY), fold),
        }
    }

    /// Applies `f` to every sample of a float image (u8 input is converted first).
    pub fn map_f32(&self, f: impl Fn(f32) -> f32) -> ImageBuffer {
        let data = match &self.data {
            PixelData::U8(v) => v.iter().map(|&x| f(x as f32 / 255.0)).collect(),
            PixelData::F32(v) => v.iter().map(|&x| f(x)).collect(),
        };
        ImageBuffer {
            height: self.height,
            width: self.width,
            channels: self.channels,
            data: PixelData::F32(data),
        }
    }
}

/// Converts an 8-bit image to float by dividing by 255. Float input is returned unchanged.
pub fn img_as_float(img: &ImageBuffer) -> ImageBuffer {
    match &img.data {
        PixelData::F32(_) => img.clone(),
        PixelData::U8(_) => img.map_f32(|x| x),
    }
}

/// Converts a float image to 8-bit: `round(clamp(v, 0, 1) * 255)`, halves away from zero.
pub fn img_as_ubyte(img: &ImageBuffer) -> ImageBuffer {
    match &img.data {
        PixelData::U8(_) => img.clone(),
        PixelData::F32(v) => ImageBuffer {
            height: img.height,
            width: img.width,
            channels: img.channels,
            data: PixelData::U8(v.iter().map(|&x| float_to_u8(x)).collect()),
        },
    }
}

pub(crate) fn float_to_u8(x: f32) -> u8 {
    // NaN clamps to 0.
    let clamped = if x > 0.0 { x.min(1.0) } else { 0.0 };
    (clamped as f64 * 255.0).round() as u8
}

/// 256-bin intensity histogram of a single channel 8-bit image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    pub counts: [u64; 256],
    pub total: u64,
}

pub fn histogram(img: &ImageBuffer) -> Result<Histogram> {
    img.require_channels("histogram", 1)?;
    let data = img.as_u8().ok_or(Error::ElemKind {
        op: "histogram",
        expected: "u8",
    })?;
    let mut counts = [0u64; 256];
    for &v in data {
        counts[v as usize] += 1;
    }
    Ok(Histogram {
        counts,
        total: data.len() as u64,
    })
}

/// Copies the half-open window `rows r0..r1`, `cols c0..c1`.
pub fn crop(img: &ImageBuffer, r0: usize, r1: usize, c0: usize, c1: usize) -> Result<ImageBuffer> {
    if r0 >= r1 || r1 > img.height {
        return Err(Error::OutOfRange {
            axis: "row",
            start: r0,
            end: r1,
            len: img.height,
        });
    }
    if c0 >= c1 || c1 > img.width {
        return Err(Error::OutOfRange {
            axis: "col",
            start: c0,
            end: c1,
            len: img.width,
        });
    }
    let ch = img.channels;
    let row_span = |r: usize| img.index(r, c0, 0)..img.index(r, c1 - 1, ch - 1) + 1;
    let data = match &img.data {
        PixelData::U8(v) => PixelData::U8((r0..r1).flat_map(|r| v[row_span(r)].iter().copied()).collect()),
        PixelData::F32(v) => PixelData::F32((r0..r1).flat_map(|r| v[row_span(r)].iter().copied()).collect()),
    };
    ImageBuffer::new(r1 - r0, c1 - c0, ch, data)
}
