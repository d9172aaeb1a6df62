//! Panorama stitching and coins segmentation pipelines plus the `imgkit`
//! command-line front end.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use imgkit::color::{gray2rgb, rgb2gray};
use imgkit::draw::rectangle_perimeter;
use imgkit::exposure::equalize_hist;
use imgkit::features::{match_descriptors, orb_detect_and_extract, peak_local_max, KeypointSet, MatchSet};
use imgkit::filters::{canny, difference_of_gaussians, gaussian, median, sobel, threshold_adaptive, CannyParams};
use imgkit::measure::{label, ransac, regionprops, Connectivity, LabelImage, RansacParams, RansacResult, RegionProps};
use imgkit::pnm::{read_pnm, write_pnm};
use imgkit::transform::{mosaic_extent, rescale, warp, MosaicExtent, TransformKind};
use imgkit::{crop, histogram, img_as_float, img_as_ubyte, ElemKind, Histogram, ImageBuffer, PixelData};

/// Sentinel written by the warps outside each frame's footprint.
pub const BACKGROUND: f32 = -1.0;

/// Failure classes, each with its own process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Processing(#[from] imgkit::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Io(_) => 2,
            CliError::Processing(_) => 3,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

// ---------------------------------------------------------------- formatting

/// C `printf("%.*g", precision, x)`.
pub fn format_g(x: f64, precision: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let p = precision.max(1);
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.*e}", p - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= p as i32 {
        let m = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (p as i32 - 1 - exp) as usize;
        strip_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn g12(x: f64) -> String {
    format_g(x, 12)
}

// ------------------------------------------------------------------ stitching

/// Settings for [`stitch`]; the defaults follow the classic panorama walkthrough.
#[derive(Debug, Clone, PartialEq)]
pub struct StitchOptions {
    pub scale: f64,
    pub keypoints: usize,
    pub fast_threshold: f64,
    pub ransac: RansacParams,
    /// Half-open `(r0, r1, c0, c1)` applied to both inputs first.
    pub crop: Option<(usize, usize, usize, usize)>,
}

impl Default for StitchOptions {
    fn default() -> Self {
        Self {
            scale: 0.25,
            keypoints: 1000,
            fast_threshold: 0.05,
            ransac: RansacParams::default(),
            crop: None,
        }
    }
}

/// Everything [`stitch`] computes, at working resolution.
#[derive(Debug, Clone)]
pub struct StitchResult {
    pub keypoints: [KeypointSet; 2],
    pub matches: MatchSet,
    pub ransac: RansacResult,
    /// Canvas shape and the frame-0 to canvas translation.
    pub extent: MosaicExtent,
    /// Both frames on the mosaic canvas, background pixels set to [`BACKGROUND`].
    pub warped: [ImageBuffer; 2],
    /// Alpha-averaged RGB mosaic clamped to `[0, 1]`.
    pub mosaic: ImageBuffer,
}

fn to_gray(img: &ImageBuffer) -> imgkit::Result<ImageBuffer> {
    match img.channels() {
        3 => rgb2gray(img),
        _ => Ok(img_as_float(img)),
    }
}

fn clamp_unit(img: &ImageBuffer) -> ImageBuffer {
    img.map_f32(|v| v.clamp(0.0, 1.0))
}

/// Registers `frame1` onto `frame0` and merges both onto one canvas.
///
/// The model maps frame-1 `(x, y) = (col, row)` points to frame 0.
pub fn stitch(frame0: &ImageBuffer, frame1: &ImageBuffer, opts: &StitchOptions) -> imgkit::Result<StitchResult> {
    let prepare = |img: &ImageBuffer| -> imgkit::Result<ImageBuffer> {
        let img = match opts.crop {
            Some((r0, r1, c0, c1)) => crop(img, r0, r1, c0, c1)?,
            None => img.clone(),
        };
        rescale(&to_gray(&img)?, opts.scale)
    };
    let (g0, g1) = (prepare(frame0)?, prepare(frame1)?);
    let k0 = orb_detect_and_extract(&g0, opts.keypoints, opts.fast_threshold)?;
    let k1 = orb_detect_and_extract(&g1, opts.keypoints, opts.fast_threshold)?;
    let matches = match_descriptors(&k0.descriptors, &k1.descriptors, true);

    let xy = |(r, c): (usize, usize)| (c as f64, r as f64);
    let src: Vec<_> = matches.pairs.iter().map(|&(_, j)| xy(k1.coords[j])).collect();
    let dst: Vec<_> = matches.pairs.iter().map(|&(i, _)| xy(k0.coords[i])).collect();
    let fit = ransac(&src, &dst, TransformKind::Projective, &opts.ransac)?;

    let extent = mosaic_extent(&fit.model, g0.shape(), g1.shape())?;
    let w0 = warp(&g0, &extent.offset.inverse()?, extent.output_shape, BACKGROUND)?;
    let w1 = warp(&g1, &fit.model.compose(&extent.offset)?.inverse()?, extent.output_shape, BACKGROUND)?;
    let merged = imgkit::transform::blend_average(&[
        imgkit::color::add_alpha(&w0, BACKGROUND)?,
        imgkit::color::add_alpha(&w1, BACKGROUND)?,
    ])?;
    Ok(StitchResult {
        keypoints: [k0, k1],
        matches,
        ransac: fit,
        extent,
        warped: [w0, w1],
        mosaic: clamp_unit(&merged),
    })
}

fn keypoints_csv(k: &KeypointSet) -> String {
    let mut s = String::from("row,col,score,orientation\n");
    for i in 0..k.len() {
        let (r, c) = k.coords[i];
        let _ = writeln!(s, "{r},{c},{},{}", g12(k.scores[i]), g12(k.orientations[i]));
    }
    s
}

fn matches_csv(m: &MatchSet) -> String {
    let mut s = String::from("i,j,hamming\n");
    for (&(i, j), d) in m.pairs.iter().zip(&m.distances) {
        let _ = writeln!(s, "{i},{j},{d}");
    }
    s
}

fn inliers_csv(m: &MatchSet, r: &RansacResult) -> String {
    let mut s = String::from("i,j,inlier\n");
    for (&(i, j), &inl) in m.pairs.iter().zip(&r.inliers) {
        let _ = writeln!(s, "{i},{j},{}", inl as u8);
    }
    s
}

fn model_txt(r: &RansacResult) -> String {
    r.model
        .matrix()
        .iter()
        .map(|row| row.iter().map(|&v| g12(v)).collect::<Vec<_>>().join(" ") + "\n")
        .collect()
}

// ---------------------------------------------------------------- coins demo

/// Settings for [`coins_demo`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinsOptions {
    pub block_size: usize,
    pub offset: f64,
    pub min_distance: usize,
    pub canny: CannyParams,
}

impl Default for CoinsOptions {
    fn default() -> Self {
        Self {
            block_size: 95,
            offset: -15.0,
            min_distance: 20,
            canny: CannyParams::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CoinsResult {
    pub histogram: Histogram,
    /// 0/1 mask
    pub adaptive: ImageBuffer,
    pub peaks: Vec<(usize, usize)>,
    /// 0/1 mask
    pub edges: ImageBuffer,
    pub labels: LabelImage,
    pub regions: Vec<RegionProps>,
    /// Input as RGB with a red box around every region.
    pub boxes: ImageBuffer,
}

/// Histogram, adaptive threshold, local maxima, Canny edges, labels of the
/// edge map and their bounding boxes, on an 8-bit grey image.
pub fn coins_demo(img: &ImageBuffer, opts: &CoinsOptions) -> imgkit::Result<CoinsResult> {
    let gray = match (img.channels(), img.elem_kind()) {
        (1, ElemKind::U8) => img.clone(),
        _ => img_as_ubyte(&to_gray(img)?),
    };
    let hist = histogram(&gray)?;
    let adaptive = threshold_adaptive(&gray, opts.block_size, opts.offset)?;
    let peaks = peak_local_max(&gray, opts.min_distance)?;
    let edges = canny(&gray, opts.canny)?;
    let labels = label(&edges, Connectivity::Eight)?;
    let regions = regionprops(&labels, None)?;

    let (h, w) = gray.shape();
    let PixelData::U8(mut rgb) = gray2rgb(&gray)?.into_data() else {
        unreachable!("gray2rgb keeps u8");
    };
    for region in &regions {
        let (r0, c0, r1, c1) = region.bbox;
        for (r, c) in rectangle_perimeter(r0 as i64, c0 as i64, r1 as i64, c1 as i64)? {
            if r >= 0 && c >= 0 && (r as usize) < h && (c as usize) < w {
                let i = (r as usize * w + c as usize) * 3;
                rgb[i..i + 3].copy_from_slice(&[255, 0, 0]);
            }
        }
    }
    Ok(CoinsResult {
        histogram: hist,
        adaptive,
        peaks,
        edges,
        labels,
        regions,
        boxes: ImageBuffer::from_u8(h, w, 3, rgb)?,
    })
}

/// Labels spread over `0..=255`: `round(label * 255 / n)`.
pub fn labels_for_viewing(labels: &LabelImage) -> ImageBuffer {
    let n = labels.n.max(1) as f64;
    let data = labels
        .labels
        .iter()
        .map(|&l| (l as f64 * 255.0 / n).round() as u8)
        .collect();
    ImageBuffer::from_u8(labels.height, labels.width, 1, data).expect("label shape")
}

// ------------------------------------------------------------------------ CLI

#[derive(Debug, Parser)]
#[command(name = "imgkit", version, about = "Image processing pipelines and single operations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Register two overlapping frames and write their mosaic as PPM.
    Stitch(StitchArgs),
    /// Run the coins segmentation walkthrough and write its artifacts.
    CoinsDemo(CoinsArgs),
    /// Apply one operation to an image.
    Apply(ApplyArgs),
    /// Print `width height channels kind min max`.
    Info { input: PathBuf },
}

#[derive(Debug, Args)]
struct StitchArgs {
    /// Reference frame.
    frame0: PathBuf,
    /// Frame registered onto the reference.
    frame1: PathBuf,
    /// Output PPM.
    output: PathBuf,
    #[arg(long, default_value_t = 0.25)]
    scale: f64,
    #[arg(long, default_value_t = 1000)]
    keypoints: usize,
    #[arg(long, default_value_t = 0.05)]
    fast_threshold: f64,
    #[arg(long, default_value_t = 4)]
    min_samples: usize,
    #[arg(long, default_value_t = 2.0)]
    residual_threshold: f64,
    #[arg(long, default_value_t = 100)]
    max_trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Half-open window `r0,r1,c0,c1` cut from both inputs.
    #[arg(long, value_parser = parse_crop)]
    crop: Option<(usize, usize, usize, usize)>,
    /// Directory for keypoints, matches, inliers, model and warped frames.
    #[arg(long)]
    debug_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CoinsArgs {
    input: PathBuf,
    outdir: PathBuf,
    #[arg(long, default_value_t = 95)]
    block_size: usize,
    #[arg(long, default_value_t = -15.0, allow_hyphen_values = true)]
    offset: f64,
    #[arg(long, default_value_t = 20)]
    min_distance: usize,
    #[arg(long, default_value_t = 3.0)]
    sigma: f64,
    #[arg(long, default_value_t = 10.0)]
    low_threshold: f64,
    #[arg(long, default_value_t = 80.0)]
    high_threshold: f64,
}

#[derive(Debug, Args)]
struct ApplyArgs {
    /// sobel, gaussian:S, median:R, canny:S,LO,HI, equalize, rgb2gray,
    /// rescale:S, dog:S1,S2 or adaptive:B,O
    op: String,
    input: PathBuf,
    output: PathBuf,
    /// Clamp float results into [0, 1] instead of failing on out-of-range values.
    #[arg(long)]
    float_clip: bool,
}

fn parse_crop(s: &str) -> std::result::Result<(usize, usize, usize, usize), String> {
    let v: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    match v[..] {
        [r0, r1, c0, c1] => Ok((r0, r1, c0, c1)),
        _ => Err(format!("expected r0,r1,c0,c1, got {s:?}")),
    }
}

fn read_image(path: &Path) -> CliResult<ImageBuffer> {
    let bytes = fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    read_pnm(&bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, bytes: &[u8]) -> CliResult<()> {
    fs::write(path, bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn write_image(path: &Path, img: &ImageBuffer) -> CliResult<()> {
    let bytes = write_pnm(img)?;
    write_file(path, &bytes)
}

fn mask_to_u8(mask: &ImageBuffer) -> ImageBuffer {
    let (h, w) = mask.shape();
    let data = (0..h * w)
        .map(|i| if mask.get_native(i / w, i % w, 0) != 0.0 { 255 } else { 0 })
        .collect();
    ImageBuffer::from_u8(h, w, 1, data).expect("mask shape")
}

fn create_dir(dir: &Path) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))
}

fn cmd_stitch(a: &StitchArgs) -> CliResult<()> {
    let f0 = read_image(&a.frame0)?;
    let f1 = read_image(&a.frame1)?;
    let opts = StitchOptions {
        scale: a.scale,
        keypoints: a.keypoints,
        fast_threshold: a.fast_threshold,
        ransac: RansacParams {
            min_samples: a.min_samples,
            residual_threshold: a.residual_threshold,
            max_trials: a.max_trials,
            seed: a.seed,
        },
        crop: a.crop,
    };
    let res = stitch(&f0, &f1, &opts)?;
    write_image(&a.output, &img_as_ubyte(&res.mosaic))?;
    if let Some(dir) = &a.debug_dir {
        create_dir(dir)?;
        for (k, kp) in res.keypoints.iter().enumerate() {
            write_file(&dir.join(format!("keypoints{k}.csv")), keypoints_csv(kp).as_bytes())?;
        }
        write_file(&dir.join("matches.csv"), matches_csv(&res.matches).as_bytes())?;
        write_file(&dir.join("inliers.csv"), inliers_csv(&res.matches, &res.ransac).as_bytes())?;
        write_file(&dir.join("model.txt"), model_txt(&res.ransac).as_bytes())?;
        for (k, w) in res.warped.iter().enumerate() {
            let rgb = gray2rgb(&img_as_ubyte(&clamp_unit(w)))?;
            write_image(&dir.join(format!("warped{k}.ppm")), &rgb)?;
        }
    }
    Ok(())
}

fn cmd_coins(a: &CoinsArgs) -> CliResult<()> {
    let img = read_image(&a.input)?;
    let opts = CoinsOptions {
        block_size: a.block_size,
        offset: a.offset,
        min_distance: a.min_distance,
        canny: CannyParams::new(a.sigma, a.low_threshold, a.high_threshold)?,
    };
    let res = coins_demo(&img, &opts)?;
    create_dir(&a.outdir)?;
    let mut hist = String::from("bin,count\n");
    for (bin, count) in res.histogram.counts.iter().enumerate() {
        let _ = writeln!(hist, "{bin},{count}");
    }
    write_file(&a.outdir.join("histogram.csv"), hist.as_bytes())?;
    write_image(&a.outdir.join("adaptive.pgm"), &mask_to_u8(&res.adaptive))?;
    let mut peaks = String::from("row,col\n");
    for (r, c) in &res.peaks {
        let _ = writeln!(peaks, "{r},{c}");
    }
    write_file(&a.outdir.join("peaks.csv"), peaks.as_bytes())?;
    write_image(&a.outdir.join("edges.pgm"), &mask_to_u8(&res.edges))?;
    write_image(&a.outdir.join("labels.pgm"), &labels_for_viewing(&res.labels))?;
    write_image(&a.outdir.join("boxes.ppm"), &res.boxes)?;
    Ok(())
}

/// A parsed `apply` operation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Op {
    Sobel,
    Gaussian(f64),
    Median(usize),
    Canny(f64, f64, f64),
    Equalize,
    Rgb2Gray,
    Rescale(f64),
    Dog(f64, f64),
    Adaptive(usize, f64),
}

impl std::str::FromStr for Op {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let nums = |n: usize| -> std::result::Result<Vec<f64>, String> {
            let v: Vec<f64> = if rest.is_empty() {
                Vec::new()
            } else {
                rest.split(',')
                    .map(|p| p.trim().parse::<f64>().map_err(|_| format!("bad number {p:?} in {s:?}")))
                    .collect::<std::result::Result<_, _>>()?
            };
            if v.len() == n {
                Ok(v)
            } else {
                Err(format!("{name} takes {n} argument(s), got {}", v.len()))
            }
        };
        let count = |x: f64| -> std::result::Result<usize, String> {
            if x >= 0.0 && x.fract() == 0.0 {
                Ok(x as usize)
            } else {
                Err(format!("expected a non-negative integer in {s:?}"))
            }
        };
        Ok(match name {
            "sobel" => nums(0).map(|_| Op::Sobel)?,
            "equalize" => nums(0).map(|_| Op::Equalize)?,
            "rgb2gray" => nums(0).map(|_| Op::Rgb2Gray)?,
            "gaussian" => Op::Gaussian(nums(1)?[0]),
            "median" => Op::Median(count(nums(1)?[0])?),
            "rescale" => Op::Rescale(nums(1)?[0]),
            "canny" => {
                let v = nums(3)?;
                Op::Canny(v[0], v[1], v[2])
            }
            "dog" => {
                let v = nums(2)?;
                Op::Dog(v[0], v[1])
            }
            "adaptive" => {
                let v = nums(2)?;
                Op::Adaptive(count(v[0])?, v[1])
            }
            _ => return Err(format!("unknown op {name:?}")),
        })
    }
}

/// Runs one operation and converts the result to 8-bit for writing.
///
/// Masks become 0/255. Float results outside `[0, 1]` are an error unless
/// `float_clip` is set.
pub fn apply_op(op: Op, img: &ImageBuffer, float_clip: bool) -> imgkit::Result<ImageBuffer> {
    let gray_u8 = || -> imgkit::Result<ImageBuffer> {
        Ok(match (img.channels(), img.elem_kind()) {
            (1, ElemKind::U8) => img.clone(),
            _ => img_as_ubyte(&to_gray(img)?),
        })
    };
    let out = match op {
        Op::Sobel => sobel(img)?,
        Op::Gaussian(s) => gaussian(img, s)?,
        Op::Median(r) => median(img, r)?,
        Op::Canny(s, lo, hi) => return Ok(mask_to_u8(&canny(&gray_u8()?, CannyParams::new(s, lo, hi)?)?)),
        Op::Adaptive(b, o) => return Ok(mask_to_u8(&threshold_adaptive(&gray_u8()?, b, o)?)),
        Op::Equalize => equalize_hist(img)?,
        Op::Rgb2Gray => rgb2gray(img)?,
        Op::Rescale(s) => rescale(img, s)?,
        Op::Dog(a, b) => difference_of_gaussians(img, a, b)?,
    };
    if let Some(v) = out.as_f32() {
        if !float_clip && v.iter().any(|x| !(0.0..=1.0).contains(x)) {
            let (lo, hi) = out.min_max();
            return Err(imgkit::Error::InvalidParameter(format!(
                "result spans [{lo}, {hi}], outside [0, 1]; pass --float-clip to clamp"
            )));
        }
    }
    Ok(img_as_ubyte(&out))
}

fn cmd_apply(a: &ApplyArgs) -> CliResult<()> {
    let op: Op = a.op.parse().map_err(CliError::Usage)?;
    let img = read_image(&a.input)?;
    let out = apply_op(op, &img, a.float_clip)?;
    write_image(&a.output, &out)
}

/// One-line summary of an image.
pub fn info_line(img: &ImageBuffer) -> String {
    let (lo, hi) = img.min_max();
    format!(
        "{} {} {} {} {} {}",
        img.width(),
        img.height(),
        img.channels(),
        img.elem_kind().name(),
        lo,
        hi
    )
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let result = match &cli.command {
        Command::Stitch(a) => cmd_stitch(a),
        Command::CoinsDemo(a) => cmd_coins(a),
        Command::Apply(a) => cmd_apply(a),
        Command::Info { input } => read_image(input).map(|img| println!("{}", info_line(&img))),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            if let CliError::Usage(_) = e {
                eprintln!("error: {e}\n\n{}", APPLY_USAGE);
            } else {
                eprintln!("error: {e}");
            }
            e.exit_code()
        }
    }
}

const APPLY_USAGE: &str = "usage: imgkit apply <OP> <INPUT> <OUTPUT> [--float-clip]
ops: sobel | gaussian:SIGMA | median:RADIUS | canny:SIGMA,LOW,HIGH | equalize
     rgb2gray | rescale:SCALE | dog:SIGMA1,SIGMA2 | adaptive:BLOCK,OFFSET";

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_g_matches_printf() {
        let cases = [
            (0.0, "0"),
            (-0.0, "-0"),
            (1.0, "1"),
            (-2.5, "-2.5"),
            (0.1, "0.1"),
            (1.0 / 3.0, "0.333333333333"),
            (123456789012.0, "123456789012"),
            (1234567890123.0, "1.23456789012e+12"),
            (0.0001, "0.0001"),
            (0.00001234, "1.234e-05"),
            (1e100, "1e+100"),
            (99.99999999999999, "100"),
            (f64::NAN, "nan"),
            (f64::NEG_INFINITY, "-inf"),
        ];
        for (x, want) in cases {
            assert_eq!(format_g(x, 12), want, "{x}");
        }
        assert_eq!(format_g(0.000123456, 3), "0.000123");
        assert_eq!(format_g(999999.5, 6), "1e+06");
    }

    #[test]
    fn op_parsing() {
        assert_eq!("sobel".parse::<Op>(), Ok(Op::Sobel));
        assert_eq!("canny:3,10,80".parse::<Op>(), Ok(Op::Canny(3.0, 10.0, 80.0)));
        assert_eq!("adaptive:95,-15".parse::<Op>(), Ok(Op::Adaptive(95, -15.0)));
        assert_eq!("median:1".parse::<Op>(), Ok(Op::Median(1)));
        assert!("median:1.5".parse::<Op>().is_err());
        assert!("gaussian".parse::<Op>().is_err());
        assert!("sobel:2".parse::<Op>().is_err());
        assert!("blur:2".parse::<Op>().is_err());
    }

    #[test]
    fn crop_parsing() {
        assert_eq!(parse_crop("0,10,5,20"), Ok((0, 10, 5, 20)));
        assert!(parse_crop("0,10,5").is_err());
        assert!(parse_crop("a,b,c,d").is_err());
    }

    #[test]
    fn labels_scaled_for_viewing() {
        let labels = LabelImage {
            labels: vec![0, 1, 2, 3],
            height: 1,
            width: 4,
            n: 3,
        };
        assert_eq!(labels_for_viewing(&labels).as_u8().unwrap(), &[0, 85, 170, 255]);
    }

    #[test]
    fn float_results_are_checked() {
        let img = ImageBuffer::from_fn_f32(16, 16, |r, c| ((r * 3 + c * 5) % 7) as f32 / 6.0).unwrap();
        assert!(apply_op(Op::Dog(1.0, 2.0), &img, false).is_err());
        let clipped = apply_op(Op::Dog(1.0, 2.0), &img, true).unwrap();
        assert_eq!(clipped.elem_kind(), ElemKind::U8);
        assert!(apply_op(Op::Gaussian(1.0), &img, false).is_ok());
    }
}
