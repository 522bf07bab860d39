//! Builds a fingerprint from a profiler summary dump and a per-batch metrics
//! table, then reads its trend classes.
//!
//! cargo run --example ingest_trace

use peepkit::fingerprint::{
    extract_trends, ingest_profiler_csv_reader, ingest_series_csv_reader, Fingerprint,
};

const PROFILE: &str = "\
==1234== Profiling application: ./train --model mobilenet
==1234== Profiling result:
Type,Time(%),Time,Calls,Avg,Min,Max,Name
,%,ms,,us,us,us,
GPU activities,41.20,812.5,2860,284.1,12.0,901.3,\"void gemv2T_kernel_val<int, int, float, float, 128, 16, 4, 4, false, cublasGemvParams<float>>\"
GPU activities,18.02,355.4,2860,124.3,9.1,411.0,\"void gemv2T_kernel_val<int, int, float, float, 128, 16, 2, 2, false, cublasGemvParams<float>>\"
GPU activities,30.55,602.5,2860,210.7,8.8,788.2,\"void gemv2N_kernel<int, int, float, float, 128, 4, 4, 4, 1, cublasGemvParams<float>>\"
GPU activities,0.63,12.4,110,112.7,90.0,130.1,\"void gemmk1_kernel<float, 256, 5, false, false, false, false>\"
GPU activities,5.10,100.6,5720,17.6,2.1,60.0,cudnn::detail::bn_fw_tr_1C11_kernel_NCHW
GPU activities,4.50,88.8,5720,15.5,1.9,55.2,\"void cudnn::detail::activation_fw_4d_kernel<float, float>\"
";

const SERIES: &str = "\
batch_size,FPt_ms,BPt_ms,Mfp_MiB,Tp_fps,EPF_mJ
1,29.4,47.6,733,34.0,5020
4,115.1,186.9,812,34.8,4930
8,231.0,372.2,918,34.6,4960
16,459.9,741.0,1130,34.8,4940
32,921.4,1490.6,1553,34.7,4950
56,1608.0,2610.3,2188,34.8,4940
";

fn main() -> anyhow::Result<()> {
    let ingested = ingest_profiler_csv_reader(PROFILE.as_bytes())?;
    for w in &ingested.warnings {
        eprintln!("warning: {w}");
    }
    println!("kernel mix: {}", ingested.mix);

    let series = ingest_series_csv_reader(SERIES.as_bytes())?;
    let trends = extract_trends(&series);
    println!("trends: {}", serde_json::to_string(&trends)?);

    let fp = Fingerprint {
        kernel_mix: Some(ingested.mix),
        series,
        hardware: Some("p100".into()),
    };
    fp.validate()?;
    print!("{}", fp.to_json());
    Ok(())
}
