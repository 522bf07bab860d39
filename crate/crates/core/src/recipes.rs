//! Layer-by-layer definitions of the bundled networks. The JSON files under
//! `zoo/` are generated from these functions (see the `regenerate_zoo`
//! example) and a test keeps the two in sync.
//!
//! Post-op lists mirror the framework releases: `bn`, `scale` and `relu`
//! are separate in-place layers there, which matters for blob-counted
//! activations.

use crate::builder::NetBuilder;
use crate::error::ArchError;
use crate::graph::{ArchHeader, ArchitectureSpec, Component, ComponentSet, Group};

use Component::*;

const BSR: &[&str] = &["bn", "scale", "relu"];
const BS: &[&str] = &["bn", "scale"];
const RELU: &[&str] = &["relu"];

type Recipe = fn() -> Result<ArchitectureSpec, ArchError>;

/// Every bundled model, in table order: (name, file stem, recipe).
pub const RECIPES: [(&str, &str, Recipe); 16] = [
    ("AlexNet", "alexnet", alexnet),
    ("SqueezeNet-V1.0", "squeezenet_v1_0", squeezenet_v1_0),
    ("SqueezeNet-V1.1", "squeezenet_v1_1", squeezenet_v1_1),
    ("1.0-G-SqNxt-23", "sqnxt_1_0_g_23", sqnxt_1_0_g_23),
    ("1.0-SqNxt-23", "sqnxt_1_0_23", sqnxt_1_0_23),
    ("1.0-SqNxt-23v5", "sqnxt_1_0_23v5", sqnxt_1_0_23v5),
    ("2.0-SqNxt-23", "sqnxt_2_0_23", sqnxt_2_0_23),
    ("2.0-SqNxt-23v5", "sqnxt_2_0_23v5", sqnxt_2_0_23v5),
    ("MobileNet-V1", "mobilenet_v1", mobilenet_v1),
    ("MobileNet-V2", "mobilenet_v2", mobilenet_v2),
    ("ShuffleNet-V1", "shufflenet_v1", shufflenet_v1),
    ("ShuffleNet-V2", "shufflenet_v2", shufflenet_v2),
    ("DenseNet-121", "densenet121", densenet121),
    ("GoogLeNet", "googlenet", googlenet),
    ("Inception-V2", "inception_v2", inception_v2),
    ("SE-BN-Inception", "se_bn_inception", se_bn_inception),
];

fn header(
    name: &str,
    group: Group,
    input_size: u32,
    components: &[Component],
    provenance: &str,
    approximate: bool,
) -> ArchHeader {
    ArchHeader {
        name: name.into(),
        group,
        input_size,
        input_channels: 3,
        components: components.iter().copied().collect::<ComponentSet>(),
        provenance: provenance.into(),
        approximate,
    }
}

/// Single-column AlexNet with the original two-way grouping in conv2/4/5.
pub fn alexnet() -> Result<ArchitectureSpec, ArchError> {
    let mut b = NetBuilder::new(header(
        "AlexNet",
        Group::NonCompact,
        227,
        &[],
        "Krizhevsky et al. 2012; layer table of the BVLC Caffe release (grouped conv2/4/5)",
        false,
    ));
    b.conv("conv1", 96, 11)
        .stride(4)
        .valid()
        .bias()
        .post(RELU)
        .add();
    b.op("norm1", "lrn").add();
    b.max_pool("pool1", 3, 2).add();
    b.gconv("conv2", 256, 5, 2).pad(2).bias().post(RELU).add();
    b.op("norm2", "lrn").add();
    b.max_pool("pool2", 3, 2).add();
    b.conv("conv3", 384, 3).pad(1).bias().post(RELU).add();
    b.gconv("conv4", 384, 3, 2).pad(1).bias().post(RELU).add();
    b.gconv("conv5", 256, 3, 2).pad(1).bias().post(RELU).add();
    b.max_pool("pool5", 3, 2).add();
    b.fc("fc6", 4096).bias().post(&["relu", "dropout"]).add();
    b.fc("fc7", 4096).bias().post(&["relu", "dropout"]).add();
    b.fc("fc8", 1000).bias().add();
    b.op("prob", "softmax").add();
    b.finish()
}

fn fire(b: &mut NetBuilder, name: &str, squeeze: u32, expand: u32) {
    let s = b
        .pwconv(&format!("{name}/squeeze1x1"), squeeze)
        .bias()
        .post(RELU)
        .add();
    let e1 = b
        .pwconv(&format!("{name}/expand1x1"), expand)
        .from(&[&s])
        .bias()
        .post(RELU)
        .add();
    let e3 = b
        .conv(&format!("{name}/expand3x3"), expand, 3)
        .from(&[&s])
        .pad(1)
        .bias()
        .post(RELU)
        .add();
    b.concat(&format!("{name}/concat"), &[&e1, &e3]);
}

fn squeezenet_tail(b: &mut NetBuilder) {
    b.op("drop9", "dropout").add();
    b.pwconv("conv10", 1000).bias().post(RELU).add();
    b.global_avg("pool10");
    b.op("prob", "softmax").add();
}

const SQUEEZENET: &[Component] = &[FireModule, Pwconv, Branching];

pub fn squeezenet_v1_0() -> Result<ArchitectureSpec, ArchError> {
    let mut b = NetBuilder::new(header(
        "SqueezeNet-V1.0",
        Group::SqueezeNet,
        227,
        SQUEEZENET,
        "Iandola et al. 2016, SqueezeNet v1.0 Caffe release",
        false,
    ));
    b.conv("conv1", 96, 7)
        .stride(2)
        .valid()
        .bias()
        .post(RELU)
        .add();
    b.max_pool("pool1", 3, 2).ceil().add();
    fire(&mut b, "fire2", 16, 64);
    fire(&mut b, "fire3", 16, 64);
    fire(&mut b, "fire4", 32, 128);
    b.max_pool("pool4", 3, 2).ceil().add();
    fire(&mut b, "fire5", 32, 128);
    fire(&mut b, "fire6", 48, 192);
    fire(&mut b, "fire7", 48, 192);
    fire(&mut b, "fire8", 64, 256);
    b.max_pool("pool8", 3, 2).ceil().add();
    fire(&mut b, "fire9", 64, 256);
    squeezenet_tail(&mut b);
    b.finish()
}

pub fn squeezenet_v1_1() -> Result<ArchitectureSpec, ArchError> {
    let mut b = NetBuilder::new(header(
        "SqueezeNet-V1.1",
        Group::SqueezeNet,
        224,
        SQUEEZENET,
        "Iandola et al. 2016, SqueezeNet v1.1 Caffe release",
        false,
    ));
    b.conv("conv1", 64, 3)
        .stride(2)
        .valid()
        .bias()
        .post(RELU)
        .add();
    b.max_pool("pool1", 3, 2).ceil().add();
    fire(&mut b, "fire2", 16, 64);
    fire(&mut b, "fire3", 16, 64);
    b.max_pool("pool3", 3, 2).ceil().add();
    fire(&mut b, "fire4", 32, 128);
    fire(&mut b, "fire5", 32, 128);
    b.max_pool("pool5", 3, 2).ceil().add();
    fire(&mut b, "fire6", 48, 192);
    fire(&mut b, "fire7", 48, 192);
    fire(&mut b, "fire8", 64, 256);
    fire(&mut b, "fire9", 64, 256);
    squeezenet_tail(&mut b);
    b.finish()
}

/// Shape knobs shared by the SqueezeNext variants.
struct SqNxt {
    name: &'static str,
    width: u32,
    conv1: u32,
    blocks: [u32; 4],
    /// Group count for the two separable (3×1, 1×3) convolutions.
    sep_groups: u32,
}

const SQUEEZENEXT: &[Component] = &[
    FireModule,
    Pwconv,
    Branching,
    ResidualSkip,
    AsymmetricFilterDecomposition,
];

fn sqnxt(cfg: SqNxt) -> Result<ArchitectureSpec, ArchError> {
    let mut b = NetBuilder::new(header(
        cfg.name,
        Group::SqueezeNext,
        227,
        SQUEEZENEXT,
        "Gholami et al. 2018, SqueezeNext: per-stage block counts and block layout of the Caffe release",
        true,
    ));
    b.conv("conv1", 64, cfg.conv1)
        .stride(2)
        .valid()
        .post(BSR)
        .add();
    b.max_pool("pool1", 3, 2).ceil().add();
    let mut x = b.last();
    for (stage, &blocks) in cfg.blocks.iter().enumerate() {
        let c = (32 * cfg.width) << stage;
        for i in 0..blocks {
            let p = format!("s{}b{}", stage + 1, i + 1);
            let stride = if stage > 0 && i == 0 { 2 } else { 1 };
            let r1 = b
                .pwconv(&format!("{p}/reduce1"), c / 2)
                .from(&[&x])
                .stride(stride)
                .post(BSR)
                .add();
            b.pwconv(&format!("{p}/reduce2"), c / 4).post(BSR).add();
            let sep = |b: &mut NetBuilder, id: String, h: u32, w: u32| {
                if cfg.sep_groups > 1 {
                    b.gconv(&id, c / 2, h, cfg.sep_groups)
                        .width(w)
                        .post(BSR)
                        .add()
                } else {
                    b.conv(&id, c / 2, h).width(w).post(BSR).add()
                }
            };
            sep(&mut b, format!("{p}/sep3x1"), 3, 1);
            sep(&mut b, format!("{p}/sep1x3"), 1, 3);
            let expand = b.pwconv(&format!("{p}/expand"), c).post(BS).add();
            let _ = r1;
            let shortcut = if b.channels(&x) != c || stride != 1 {
                b.pwconv(&format!("{p}/shortcut"), c)
                    .from(&[&x])
                    .stride(stride)
                    .post(BS)
                    .add()
            } else {
                x.clone()
            };
            b.sum(&format!("{p}/sum"), &[&expand, &shortcut]);
            x = b.op(&format!("{p}/relu"), "relu").add();
        }
    }
    b.pwconv("conv_final", 128).post(BSR).add();
    b.global_avg("pool_final");
    b.fc("fc", 1000).bias().add();
    b.op("prob", "softmax").add();
    b.finish()
}

pub fn sqnxt_1_0_23() -> Result<ArchitectureSpec, ArchError> {
    sqnxt(SqNxt {
        name: "1.0-SqNxt-23",
        width: 1,
        conv1: 7,
        blocks: [6, 6, 8, 1],
        sep_groups: 1,
    })
}

pub fn sqnxt_1_0_g_23() -> Result<ArchitectureSpec, ArchError> {
    sqnxt(SqNxt {
        name: "1.0-G-SqNxt-23",
        width: 1,
        conv1: 7,
        blocks: [6, 6, 8, 1],
        sep_groups: 4,
    })
}

pub fn sqnxt_1_0_23v5() -> Result<ArchitectureSpec, ArchError> {
    sqnxt(SqNxt {
        name: "1.0-SqNxt-23v5",
        width: 1,
        conv1: 5,
        blocks: [2, 4, 14, 1],
        sep_groups: 1,
    })
}

pub fn sqnxt_2_0_23() -> Result<ArchitectureSpec, ArchError> {
    sqnxt(SqNxt {
        name: "2.0-SqNxt-23",
        width: 2,
        conv1: 7,
        blocks: [6, 6, 8, 1],
        sep_groups: 1,
    })
}

pub fn sqnxt_2_0_23v5() -> Result<ArchitectureSpec, ArchError> {
    sqnxt(SqNxt {
        name: "2.0-SqNxt-23v5",
        width: 2,
        conv1: 5,
        blocks: [2, 4, 14, 1],
        sep_groups: 1,
    })
}

pub fn mobilenet_v1() -> Result<ArchitectureSpec, ArchError> {
    let mut b = NetBuilder::new(header(
        "MobileNet-V1",
        Group::MobileNet,
        224,
        &[Dwconv, Pwconv],
        "Howard et al. 2017, MobileNets, Table 1 (width 1.0, 224x224)",
        false,
    ));
    b.conv("conv1", 32, 3).stride(2).post(BSR).add();
    let plan: [(u32, u32); 13] = [
        (64, 1),
        (128, 2),
        (128, 1),
        (256, 2),
        (256, 1),
        (512, 2),
        (512, 1),
        (512, 1),
        (512, 1),
        (512, 1),
        (512, 1),
        (1024, 2),
        (1024, 1),
    ];
    for (i, (n, s)) in plan.into_iter().enumerate() {
        b.dwconv(&format!("conv{}/dw", i + 2), 3)
            .stride(s)
            .post(BSR)
            .add();
        b.pwconv(&format!("conv{}/sep", i + 2), n).post(BSR).add();
    }
    b.global_avg("pool6");
    b.pwconv("fc7", 1000).bias().add();
    b.op("prob", "softmax").add();
    b.finish()
}

pub fn mobilenet_v2() -> Result<ArchitectureSpec, ArchError> {
    let mut b = NetBuilder::new(header(
        "MobileNet-V2",
        Group::MobileNet,
        224,
        &[Dwconv, Pwconv, ResidualSkip],
        "Sandler et al. 2018, MobileNetV2, Table 2 (width 1.0, 224x224)",
        false,
    ));
    b.conv("conv1", 32, 3).stride(2).post(BSR).add();
    let plan: [(u32, u32, u32, u32); 7] = [
        (1, 16, 1, 1),
        (6, 24, 2, 2),
        (6, 32, 3, 2),
        (6, 64, 4, 2),
        (6, 96, 3, 1),
        (6, 160, 3, 2),
        (6, 320, 1, 1),
    ];
    let mut x = b.last();
    let mut k = 0;
    for (t, c, n, s) in plan {
        for i in 0..n {
            k += 1;
            let p = format!("block{k}");
            let stride = if i == 0 { s } else { 1 };
            let cin = b.channels(&x);
            if t > 1 {
                b.pwconv(&format!("{p}/expand"), cin * t)
                    .from(&[&x])
                    .post(BSR)
                    .add();
            }
            let dw = b.dwconv(&format!("{p}/dw"), 3).stride(stride).post(BSR);
            let dw = if t > 1 { dw } else { dw.from(&[&x]) };
            dw.add();
            let y = b.pwconv(&format!("{p}/linear"), c).post(BS).add();
            x = if stride == 1 && cin == c {
                b.sum(&format!("{p}/sum"), &[&x, &y])
            } else {
                y
            };
        }
    }
    b.pwconv("conv_last", 1280).post(BSR).add();
    b.global_avg("pool");
    b.pwconv("fc", 1000).bias().add();
    b.op("prob", "softmax").add();
    b.finish()
}

const SHUFFLENET: &[Component] = &[Dwconv, ChannelShuffling, Pwconv, Branching, ResidualSkip];

/// ShuffleNet (g = 3, 1x): grouped 1×1 convolutions around a depthwise 3×3.
pub fn shufflenet_v1() -> Result<ArchitectureSpec, ArchError> {
    let g = 3;
    let mut b = NetBuilder::new(header(
        "ShuffleNet-V1",
        Group::ShuffleNet,
        224,
        SHUFFLENET,
        "Zhang et al. 2018, ShuffleNet, Table 1 (g = 3, 1x)",
        false,
    ));
    b.conv("conv1", 24, 3).stride(2).post(BSR).add();
    let mut x = b.max_pool("pool1", 3, 2).pad(1).add();
    for (stage, (out, repeats)) in [(240u32, 4u32), (480, 8), (960, 4)].into_iter().enumerate() {
        for i in 0..repeats {
            let p = format!("stage{}_{}", stage + 2, i + 1);
            let cin = b.channels(&x);
            let down = i == 0;
            let branch_out = if down { out - cin } else { out };
            let mid = out / 4;
            let g1 = if stage == 0 && i == 0 { 1 } else { g };
            if g1 == 1 {
                b.pwconv(&format!("{p}/gconv1"), mid)
                    .from(&[&x])
                    .post(BSR)
                    .add();
            } else {
                b.gconv(&format!("{p}/gconv1"), mid, 1, g1)
                    .from(&[&x])
                    .post(BSR)
                    .add();
            }
            b.op(&format!("{p}/shuffle"), "shuffle").add();
            b.dwconv(&format!("{p}/dw"), 3)
                .stride(if down { 2 } else { 1 })
                .post(BS)
                .add();
            let y = b
                .gconv(&format!("{p}/gconv2"), branch_out, 1, g)
                .post(BS)
                .add();
            let merged = if down {
                let sc = b
                    .avg_pool(&format!("{p}/shortcut"), 3, 2)
                    .from(&[&x])
                    .pad(1)
                    .add();
                b.concat(&format!("{p}/concat"), &[&sc, &y])
            } else {
                b.sum(&format!("{p}/sum"), &[&x, &y])
            };
            let _ = merged;
            x = b.op(&format!("{p}/relu"), "relu").add();
        }
    }
    b.global_avg("pool");
    b.fc("fc", 1000).bias().add();
    b.op("prob", "softmax").add();
    b.finish()
}

/// ShuffleNet V2 (2x): channel split, two-branch units, concat + shuffle.
pub fn shufflenet_v2() -> Result<ArchitectureSpec, ArchError> {
    shufflenet_v2_with(
        [244, 488, 976],
        2048,
        "Ma et al. 2018, ShuffleNet V2, Table 5 (2x)",
    )
}

fn shufflenet_v2_with(
    widths: [u32; 3],
    conv5: u32,
    provenance: &str,
) -> Result<ArchitectureSpec, ArchError> {
    let mut b = NetBuilder::new(header(
        "ShuffleNet-V2",
        Group::ShuffleNet,
        224,
        SHUFFLENET,
        provenance,
        false,
    ));
    b.conv("conv1", 24, 3).stride(2).post(BSR).add();
    let mut x = b.max_pool("pool1", 3, 2).pad(1).add();
    for (stage, (out, repeats)) in [(widths[0], 4u32), (widths[1], 8), (widths[2], 4)]
        .into_iter()
        .enumerate()
    {
        for i in 0..repeats {
            let p = format!("stage{}_{}", stage + 2, i + 1);
            let half = out / 2;
            let (left, right_in) = if i == 0 {
                b.dwconv(&format!("{p}/left_dw"), 3)
                    .from(&[&x])
                    .stride(2)
                    .post(BS)
                    .add();
                let l = b.pwconv(&format!("{p}/left_pw"), half).post(BSR).add();
                (l, x.clone())
            } else {
                let cin = b.channels(&x);
                let l = b.slice(&format!("{p}/split_l"), &x, cin / 2);
                let r = b.slice(&format!("{p}/split_r"), &x, cin / 2);
                (l, r)
            };
            let stride = if i == 0 { 2 } else { 1 };
            b.pwconv(&format!("{p}/right_pw1"), half)
                .from(&[&right_in])
                .post(BSR)
                .add();
            b.dwconv(&format!("{p}/right_dw"), 3)
                .stride(stride)
                .post(BS)
                .add();
            let r = b.pwconv(&format!("{p}/right_pw2"), half).post(BSR).add();
            b.concat(&format!("{p}/concat"), &[&left, &r]);
            x = b.op(&format!("{p}/shuffle"), "shuffle").add();
        }
    }
    b.pwconv("conv5", conv5).post(BSR).add();
    b.global_avg("pool");
    b.fc("fc", 1000).bias().add();
    b.op("prob", "softmax").add();
    b.finish()
}

/// DenseNet-121 (k = 32, bottleneck + compression 0.5), pre-activation
/// BN-Scale-ReLU modelled as standalone nodes on the concatenated input.
pub fn densenet121() -> Result<ArchitectureSpec, ArchError> {
    let mut b = NetBuilder::new(header(
        "DenseNet-121",
        Group::DenseNet,
        224,
        &[DenseBlock, Pwconv, ResidualSkip],
        "Huang et al. 2017, DenseNet-BC-121 (k = 32) Caffe release, ceil-mode pooling",
        false,
    ));
    b.conv("conv1", 64, 7).stride(2).pad(3).post(BSR).add();
    let mut x = b.max_pool("pool1", 3, 2).pad(1).ceil().add();
    let growth = 32;
    for (blk, layers) in [6u32, 12, 24, 16].into_iter().enumerate() {
        for l in 0..layers {
            let p = format!("conv{}_{}", blk + 2, l + 1);
            b.op(&format!("{p}/x1/bn"), "bn")
                .from(&[&x])
                .post(&["scale", "relu"])
                .add();
            b.pwconv(&format!("{p}/x1"), 4 * growth).post(BSR).add();
            let y = b.conv(&format!("{p}/x2"), growth, 3).pad(1).add();
            x = b.concat(&format!("concat_{}_{}", blk + 2, l + 1), &[&x, &y]);
        }
        if blk < 3 {
            let p = format!("conv{}_blk", blk + 2);
            b.op(&format!("{p}/bn"), "bn")
                .post(&["scale", "relu"])
                .add();
            let half = b.channels(&x) / 2;
            b.pwconv(&p, half).add();
            x = b.avg_pool(&format!("pool{}", blk + 2), 2, 2).ceil().add();
        }
    }
    b.op("conv5_blk/bn", "bn").post(&["scale", "relu"]).add();
    b.global_avg("pool5");
    b.pwconv("fc6", 1000).bias().add();
    b.op("prob", "softmax").add();
    b.finish()
}

/// (1×1, 3×3 reduce, 3×3, 5×5 reduce, 5×5, pool proj)
type GoogLeNetModule = (u32, u32, u32, u32, u32, u32);

fn inception_v1(b: &mut NetBuilder, name: &str, m: GoogLeNetModule) {
    let x = b.last();
    let a = b
        .pwconv(&format!("{name}/1x1"), m.0)
        .from(&[&x])
        .bias()
        .post(RELU)
        .add();
    b.pwconv(&format!("{name}/3x3_reduce"), m.1)
        .from(&[&x])
        .bias()
        .post(RELU)
        .add();
    let c = b
        .conv(&format!("{name}/3x3"), m.2, 3)
        .pad(1)
        .bias()
        .post(RELU)
        .add();
    b.pwconv(&format!("{name}/5x5_reduce"), m.3)
        .from(&[&x])
        .bias()
        .post(RELU)
        .add();
    let d = b
        .conv(&format!("{name}/5x5"), m.4, 5)
        .pad(2)
        .bias()
        .post(RELU)
        .add();
    b.max_pool(&format!("{name}/pool"), 3, 1)
        .from(&[&x])
        .pad(1)
        .add();
    let e = b
        .pwconv(&format!("{name}/pool_proj"), m.5)
        .bias()
        .post(RELU)
        .add();
    b.concat(&format!("{name}/output"), &[&a, &c, &d, &e]);
}

pub fn googlenet() -> Result<ArchitectureSpec, ArchError> {
    let mut b = NetBuilder::new(header(
        "GoogLeNet",
        Group::InceptionNet,
        224,
        &[InceptionModule, Pwconv, Branching],
        "Szegedy et al. 2015, GoogLeNet, Table 1 (BVLC Caffe release, auxiliary heads omitted)",
        false,
    ));
    b.conv("conv1/7x7_s2", 64, 7)
        .stride(2)
        .pad(3)
        .bias()
        .post(RELU)
        .add();
    b.max_pool("pool1/3x3_s2", 3, 2).ceil().add();
    b.op("pool1/norm1", "lrn").add();
    b.pwconv("conv2/3x3_reduce", 64).bias().post(RELU).add();
    b.conv("conv2/3x3", 192, 3).pad(1).bias().post(RELU).add();
    b.op("conv2/norm2", "lrn").add();
    b.max_pool("pool2/3x3_s2", 3, 2).ceil().add();
    inception_v1(&mut b, "inception_3a", (64, 96, 128, 16, 32, 32));
    inception_v1(&mut b, "inception_3b", (128, 128, 192, 32, 96, 64));
    b.max_pool("pool3/3x3_s2", 3, 2).ceil().add();
    inception_v1(&mut b, "inception_4a", (192, 96, 208, 16, 48, 64));
    inception_v1(&mut b, "inception_4b", (160, 112, 224, 24, 64, 64));
    inception_v1(&mut b, "inception_4c", (128, 128, 256, 24, 64, 64));
    inception_v1(&mut b, "inception_4d", (112, 144, 288, 32, 64, 64));
    inception_v1(&mut b, "inception_4e", (256, 160, 320, 32, 128, 128));
    b.max_pool("pool4/3x3_s2", 3, 2).ceil().add();
    inception_v1(&mut b, "inception_5a", (256, 160, 320, 32, 128, 128));
    inception_v1(&mut b, "inception_5b", (384, 192, 384, 48, 128, 128));
    b.global_avg("pool5/7x7_s1");
    b.op("pool5/drop", "dropout").add();
    b.fc("loss3/classifier", 1000).bias().add();
    b.op("prob", "softmax").add();
    b.finish()
}

#[derive(Clone, Copy)]
enum PoolKind {
    Avg,
    Max,
}

/// One BN-Inception module. `one` = 0 drops the 1×1 branch; `proj` = 0
/// passes the pooled input straight to the concat. Stride-2 modules use max
/// pooling without projection.
struct BnModule {
    one: u32,
    r3: u32,
    c3: u32,
    rd: u32,
    d3: u32,
    pool: PoolKind,
    proj: u32,
    stride: u32,
}

fn bn_inception_module(b: &mut NetBuilder, name: &str, m: &BnModule) -> String {
    let x = b.last();
    let mut outs = Vec::new();
    if m.one > 0 {
        outs.push(
            b.pwconv(&format!("{name}/1x1"), m.one)
                .from(&[&x])
                .post(BSR)
                .add(),
        );
    }
    b.pwconv(&format!("{name}/3x3_reduce"), m.r3)
        .from(&[&x])
        .post(BSR)
        .add();
    outs.push(
        b.conv(&format!("{name}/3x3"), m.c3, 3)
            .stride(m.stride)
            .pad(1)
            .post(BSR)
            .add(),
    );
    b.pwconv(&format!("{name}/double_3x3_reduce"), m.rd)
        .from(&[&x])
        .post(BSR)
        .add();
    b.conv(&format!("{name}/double_3x3_1"), m.d3, 3)
        .pad(1)
        .post(BSR)
        .add();
    outs.push(
        b.conv(&format!("{name}/double_3x3_2"), m.d3, 3)
            .stride(m.stride)
            .pad(1)
            .post(BSR)
            .add(),
    );
    let pool_id = format!("{name}/pool");
    let pool = match m.pool {
        PoolKind::Avg => b.avg_pool(&pool_id, 3, m.stride),
        PoolKind::Max => b.max_pool(&pool_id, 3, m.stride),
    };
    let pool = if m.stride == 1 { pool.pad(1) } else { pool };
    let pooled = pool.from(&[&x]).ceil().add();
    outs.push(if m.proj > 0 {
        b.pwconv(&format!("{name}/pool_proj"), m.proj)
            .post(BSR)
            .add()
    } else {
        pooled
    });
    let refs: Vec<&str> = outs.iter().map(String::as_str).collect();
    b.concat(&format!("{name}/output"), &refs)
}

#[allow(clippy::too_many_arguments)]
const fn bm(
    one: u32,
    r3: u32,
    c3: u32,
    rd: u32,
    d3: u32,
    pool: PoolKind,
    proj: u32,
    stride: u32,
) -> BnModule {
    BnModule {
        one,
        r3,
        c3,
        rd,
        d3,
        pool,
        proj,
        stride,
    }
}

const BN_INCEPTION: [(&str, BnModule); 10] = [
    ("inception_3a", bm(64, 64, 64, 64, 96, PoolKind::Avg, 32, 1)),
    ("inception_3b", bm(64, 64, 96, 64, 96, PoolKind::Avg, 64, 1)),
    ("inception_3c", bm(0, 128, 160, 64, 96, PoolKind::Max, 0, 2)),
    (
        "inception_4a",
        bm(224, 64, 96, 96, 128, PoolKind::Avg, 128, 1),
    ),
    (
        "inception_4b",
        bm(192, 96, 128, 96, 128, PoolKind::Avg, 128, 1),
    ),
    (
        "inception_4c",
        bm(160, 128, 160, 128, 160, PoolKind::Avg, 128, 1),
    ),
    (
        "inception_4d",
        bm(96, 128, 192, 160, 192, PoolKind::Avg, 128, 1),
    ),
    (
        "inception_4e",
        bm(0, 128, 192, 192, 256, PoolKind::Max, 0, 2),
    ),
    (
        "inception_5a",
        bm(352, 192, 320, 160, 224, PoolKind::Avg, 128, 1),
    ),
    (
        "inception_5b",
        bm(352, 192, 320, 192, 224, PoolKind::Max, 128, 1),
    ),
];

fn bn_inception(mut b: NetBuilder, squeeze_excite: bool) -> Result<ArchitectureSpec, ArchError> {
    b.conv("conv1/7x7_s2", 64, 7)
        .stride(2)
        .pad(3)
        .post(BSR)
        .add();
    b.max_pool("pool1/3x3_s2", 3, 2).ceil().add();
    b.pwconv("conv2/3x3_reduce", 64).post(BSR).add();
    b.conv("conv2/3x3", 192, 3).pad(1).post(BSR).add();
    b.max_pool("pool2/3x3_s2", 3, 2).ceil().add();
    for (name, m) in &BN_INCEPTION {
        let out = bn_inception_module(&mut b, name, m);
        if squeeze_excite {
            let c = b.channels(&out);
            b.global_avg(&format!("{name}/se_pool"));
            b.pwconv(&format!("{name}/se_down"), c / 16)
                .bias()
                .post(RELU)
                .add();
            let gate = b
                .pwconv(&format!("{name}/se_up"), c)
                .bias()
                .post(&["sigmoid"])
                .add();
            b.scale_by(&format!("{name}/se_scale"), &out, &gate);
        }
    }
    b.global_avg("global_pool");
    b.fc("fc", 1000).bias().add();
    b.op("prob", "softmax").add();
    b.finish()
}

const INCEPTION_V2: &[Component] = &[
    InceptionModule,
    Pwconv,
    Branching,
    AsymmetricFilterDecomposition,
];

/// Inception-V2 in its widespread BN-Inception form.
pub fn inception_v2() -> Result<ArchitectureSpec, ArchError> {
    let b = NetBuilder::new(header(
        "Inception-V2",
        Group::InceptionNet,
        224,
        INCEPTION_V2,
        "Ioffe & Szegedy 2015, BN-Inception layer table (Caffe release commonly distributed as Inception-V2)",
        true,
    ));
    bn_inception(b, false)
}

/// BN-Inception with a squeeze-and-excitation gate (reduction 16) after
/// every module.
pub fn se_bn_inception() -> Result<ArchitectureSpec, ArchError> {
    let b = NetBuilder::new(header(
        "SE-BN-Inception",
        Group::InceptionNet,
        224,
        &[
            InceptionModule,
            Pwconv,
            Branching,
            ResidualSkip,
            AsymmetricFilterDecomposition,
        ],
        "Hu et al. 2018, Squeeze-and-Excitation Networks: SE-BN-Inception with the publication's default reduction ratio 16",
        true,
    ));
    bn_inception(b, true)
}
