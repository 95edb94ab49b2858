#include "attnkern/cli.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "attnkern/attention.hpp"
#include "attnkern/bounds.hpp"
#include "attnkern/dof.hpp"
#include "attnkern/io/lafc.hpp"
#include "attnkern/io/qkdf.hpp"
#include "attnkern/io/report.hpp"
#include "attnkern/parallel.hpp"
#include "attnkern/rng.hpp"
#include "attnkern/sampling.hpp"
#include "attnkern/simd/kernels.hpp"
#include "attnkern/toy_model.hpp"
#include "attnkern/training.hpp"
#include "io/binary.hpp"

namespace attnkern {

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// ---- gen-toy ----------------------------------------------------------

struct GenToyArgs {
    std::string out;
    ToyConfig cfg;
    std::string input_mode = "gaussian";
};

void run_gen_toy(const GenToyArgs& args) {
    ToyConfig cfg = args.cfg;
    parse_input_mode(args.input_mode, cfg.mode, cfg.mode_param);
    const QKDump dump = generate(cfg);
    write_qkdf(args.out, dump);
}

// ---- dof --------------------------------------------------------------

struct DofArgs {
    std::string dump_path;
    std::string out;
    double lambda = 0.1;
    std::size_t samples = 1024;
    std::uint64_t seed = 0;
    std::string normalization = "raw";
};

Report dof_report_to_text(const DoFReport& report, const std::string& dump_path) {
    Report r;
    r.set("kind", "dof-report");
    r.set("dump", dump_path);
    r.set("model", report.model_id);
    r.set_double("lambda", report.lambda);
    r.set_u64("J", report.samples);
    r.set_u64("seed", report.seed);
    r.set("normalization", gram_mode_name(report.mode));
    r.set_u64("layers", report.layers);
    r.set_u64("heads", report.heads);
    for (std::size_t s = 0; s < report.layers; ++s)
        for (std::size_t h = 0; h < report.heads; ++h)
            r.set_double("dof." + std::to_string(s + 1) + "." + std::to_string(h + 1),
                         report.at(s, h));
    for (std::size_t s = 0; s < report.layers; ++s)
        r.set_double("dof_max." + std::to_string(s + 1), report.per_layer_max[s]);
    return r;
}

DoFReport dof_report_from_text(const Report& r) {
    if (!r.has("kind") || r.get("kind") != "dof-report")
        throw format_error("report: expected kind = dof-report");
    DoFReport report;
    report.model_id = r.has("model") ? r.get("model") : "unknown";
    report.lambda = r.get_double("lambda");
    report.samples = r.get_u64("J");
    report.seed = r.get_u64("seed");
    report.mode = parse_gram_mode(r.get("normalization"));
    report.layers = r.get_u64("layers");
    report.heads = r.get_u64("heads");
    report.per_head.resize(report.layers * report.heads);
    report.per_layer_max.resize(report.layers);
    for (std::size_t s = 0; s < report.layers; ++s)
        for (std::size_t h = 0; h < report.heads; ++h)
            report.per_head[s * report.heads + h] =
                r.get_double("dof." + std::to_string(s + 1) + "." + std::to_string(h + 1));
    for (std::size_t s = 0; s < report.layers; ++s)
        report.per_layer_max[s] = r.get_double("dof_max." + std::to_string(s + 1));
    return report;
}

void run_dof(const DofArgs& args) {
    const QKDump dump = read_qkdf(args.dump_path);
    const GramMode mode = parse_gram_mode(args.normalization);
    const DoFReport report = dof_report(dump, args.lambda, args.samples, args.seed, mode, "toy");
    dof_report_to_text(report, args.dump_path).save(args.out);
}

// ---- allocate ---------------------------------------------------------

struct AllocateArgs {
    std::string report_path;
    std::string out;
    std::size_t cost = 64;
    std::optional<std::size_t> clip;
};

Report allocation_to_text(const Allocation& alloc, const std::string& report_path) {
    Report r;
    r.set("kind", "allocation");
    r.set("report", report_path);
    r.set_double("lambda", alloc.lambda);
    r.set_u64("budget", alloc.budget);
    r.set_double("t_inv", alloc.inverse_scale);
    if (alloc.clip) r.set_u64("clip", *alloc.clip);
    r.set_u64("layers", alloc.dims.size());
    for (std::size_t s = 0; s < alloc.dims.size(); ++s)
        r.set_u64("dim." + std::to_string(s + 1), alloc.dims[s]);
    return r;
}

std::vector<std::size_t> allocation_dims_from_text(const Report& r) {
    if (!r.has("kind") || r.get("kind") != "allocation")
        throw format_error("report: expected kind = allocation");
    const std::size_t layers = r.get_u64("layers");
    std::vector<std::size_t> dims(layers);
    for (std::size_t s = 0; s < layers; ++s)
        dims[s] = r.get_u64("dim." + std::to_string(s + 1));
    return dims;
}

void run_allocate(const AllocateArgs& args) {
    const DoFReport report = dof_report_from_text(Report::load(args.report_path));
    const Allocation alloc = allocate(report, args.cost, args.clip);
    allocation_to_text(alloc, args.report_path).save(args.out);
}

// ---- distill ----------------------------------------------------------

struct DistillArgs {
    std::string dump_path;
    std::string alloc_path;
    std::string out;
    std::string trace_path;
    std::string loss = "l2";
    std::size_t steps = 200;
    std::size_t batch = 8;
    double lr_z = 0.02;
    double lr_alpha = 0.2;
    std::uint64_t seed = 0;
    bool noncausal = false;
};

TrainBatch batch_from_dump(const QKDump& dump, std::size_t layer, std::size_t head) {
    TrainBatch batch;
    const Matrix& q = dump.queries_at(layer, head);
    const Matrix& k = dump.keys_at(layer, head);
    batch.queries.reserve(dump.sequences);
    batch.keys.reserve(dump.sequences);
    for (std::size_t t = 0; t < dump.sequences; ++t) {
        Matrix qt(dump.seq_len, dump.dim), kt(dump.seq_len, dump.dim);
        std::copy(q.row(t * dump.seq_len), q.row(t * dump.seq_len) + qt.size(), qt.data());
        std::copy(k.row(t * dump.seq_len), k.row(t * dump.seq_len) + kt.size(), kt.data());
        batch.queries.push_back(std::move(qt));
        batch.keys.push_back(std::move(kt));
    }
    return batch;
}

void run_distill(const DistillArgs& args) {
    const QKDump dump = read_qkdf(args.dump_path);
    const std::vector<std::size_t> dims = allocation_dims_from_text(Report::load(args.alloc_path));
    if (dims.size() != dump.layers)
        throw argument_error("distill: allocation has " + std::to_string(dims.size()) +
                             " layers, dump has " + std::to_string(dump.layers));

    TrainConfig cfg;
    cfg.loss = parse_loss_kind(args.loss);
    cfg.steps = args.steps;
    cfg.batch_size = args.batch;
    cfg.lr_locations = args.lr_z;
    cfg.lr_log_weights = args.lr_alpha;
    cfg.causal = !args.noncausal;

    FeatureCheckpoint ckpt;
    ckpt.dim = dump.dim;
    ckpt.layers.assign(dump.layers, std::vector<FeatureMap>(dump.heads));
    std::vector<Vector> traces(dump.layers * dump.heads);
    parallel_for(dump.layers * dump.heads, [&](std::size_t idx) {
        const std::size_t layer = idx / dump.heads;
        const std::size_t head = idx % dump.heads;
        const TrainBatch batch = batch_from_dump(dump, layer, head);
        TrainConfig head_cfg = cfg;
        head_cfg.seed = derive_seed(args.seed, layer, head);
        const FeatureMap init =
            sample_uniform(dims[layer], dump.dim, derive_seed(head_cfg.seed, 0x696e6974ULL));
        TrainResult result = train_layer(batch, init, head_cfg);
        ckpt.layers[layer][head] = std::move(result.fm);
        traces[idx] = std::move(result.trace);
    });
    write_lafc(args.out, ckpt);

    if (!args.trace_path.empty()) {
        std::string csv = "layer,head,step,loss\n";
        for (std::size_t idx = 0; idx < traces.size(); ++idx) {
            const std::size_t layer = idx / dump.heads;
            const std::size_t head = idx % dump.heads;
            for (std::size_t step = 0; step < traces[idx].size(); ++step)
                csv += std::to_string(layer + 1) + "," + std::to_string(head + 1) + "," +
                       std::to_string(step + 1) + "," + format_double(traces[idx][step]) + "\n";
        }
        io::write_file_atomic(args.trace_path, csv);
    }
}

// ---- eval -------------------------------------------------------------

struct EvalArgs {
    std::string dump_path;
    std::string features_path;
    std::string out;
    std::string metric = "kernel-rmse";
    std::size_t pairs = 512;
    std::uint64_t seed = 0;
};

double eval_kernel_rmse(const QKDump& dump, const FeatureMap& fm, std::size_t layer,
                        std::size_t head, std::size_t pairs, std::uint64_t seed) {
    const Matrix& q = dump.queries_at(layer, head);
    const Matrix& k = dump.keys_at(layer, head);
    Rng rng(seed);
    double acc = 0.0;
    for (std::size_t i = 0; i < pairs; ++i) {
        const double* qi = q.row(rng.next_below(q.rows()));
        const double* kj = k.row(rng.next_below(k.rows()));
        const double exact = attention_kernel({qi, dump.dim}, {kj, dump.dim});
        const double approx = approx_kernel({qi, dump.dim}, {kj, dump.dim}, fm);
        acc += (exact - approx) * (exact - approx);
    }
    return std::sqrt(acc / static_cast<double>(pairs));
}

double eval_attn_l2(const QKDump& dump, const FeatureMap& fm, std::size_t layer, std::size_t head,
                    std::uint64_t seed) {
    double total = 0.0;
    for (std::size_t t = 0; t < dump.sequences; ++t) {
        Matrix q(dump.seq_len, dump.dim), k(dump.seq_len, dump.dim), v(dump.seq_len, dump.dim);
        const Matrix& qs = dump.queries_at(layer, head);
        const Matrix& ks = dump.keys_at(layer, head);
        std::copy(qs.row(t * dump.seq_len), qs.row(t * dump.seq_len) + q.size(), q.data());
        std::copy(ks.row(t * dump.seq_len), ks.row(t * dump.seq_len) + k.size(), k.data());
        Rng rng(derive_seed(seed, t, 0x76616cULL));
        rng.fill_gaussian(v.data(), v.size());

        const AttentionOutput exact = softmax_attention(q, k, v);
        const AttentionOutput approx = linear_attention(q, k, v, fm);
        double seq_total = 0.0;
        Vector diff(dump.dim);
        for (std::size_t l = 0; l < dump.seq_len; ++l) {
            for (std::size_t j = 0; j < dump.dim; ++j)
                diff[j] = exact.values(l, j) - approx.values(l, j);
            seq_total += std::sqrt(kern::squared_norm(diff.data(), dump.dim));
        }
        total += seq_total / static_cast<double>(dump.seq_len);
    }
    return total / static_cast<double>(dump.sequences);
}

void run_eval(const EvalArgs& args) {
    const QKDump dump = read_qkdf(args.dump_path);
    const FeatureCheckpoint ckpt = read_lafc(args.features_path);
    if (ckpt.layers.size() != dump.layers)
        throw argument_error("eval: checkpoint layer count does not match dump");
    if (ckpt.dim != dump.dim) throw argument_error("eval: checkpoint dimension does not match dump");
    if (args.metric != "kernel-rmse" && args.metric != "attn-l2")
        throw argument_error("eval: unknown metric '" + args.metric +
                             "' (expected kernel-rmse|attn-l2)");

    Vector values(dump.layers * dump.heads, 0.0);
    parallel_for(dump.layers * dump.heads, [&](std::size_t idx) {
        const std::size_t layer = idx / dump.heads;
        const std::size_t head = idx % dump.heads;
        if (ckpt.layers[layer].size() != dump.heads)
            throw argument_error("eval: checkpoint head count does not match dump");
        const FeatureMap& fm = ckpt.layers[layer][head];
        const std::uint64_t head_seed = derive_seed(args.seed, layer, head);
        values[idx] = args.metric == "kernel-rmse"
                          ? eval_kernel_rmse(dump, fm, layer, head, args.pairs, head_seed)
                          : eval_attn_l2(dump, fm, layer, head, head_seed);
    });

    Report r;
    r.set("kind", "eval-report");
    r.set("dump", args.dump_path);
    r.set("features", args.features_path);
    r.set("metric", args.metric);
    r.set_u64("seed", args.seed);
    if (args.metric == "kernel-rmse") r.set_u64("pairs", args.pairs);
    r.set_u64("layers", dump.layers);
    r.set_u64("heads", dump.heads);
    double grand = 0.0;
    for (std::size_t s = 0; s < dump.layers; ++s) {
        double layer_mean = 0.0;
        for (std::size_t h = 0; h < dump.heads; ++h) {
            r.set_double("value." + std::to_string(s + 1) + "." + std::to_string(h + 1),
                         values[s * dump.heads + h]);
            layer_mean += values[s * dump.heads + h];
        }
        layer_mean /= static_cast<double>(dump.heads);
        r.set_double("value_layer." + std::to_string(s + 1), layer_mean);
        grand += layer_mean;
    }
    r.set_double("value_mean", grand / static_cast<double>(dump.layers));
    r.save(args.out);
}

// ---- verify -----------------------------------------------------------

struct VerifyArgs {
    std::string dump_path;
    std::string out;
    double lambda = 0.1;
    double t = 0.5;
    double delta = 0.1;
    std::size_t trials = 100;
    std::string sampler = "uniform";
    std::string item = "both"; // i, ii, both
    std::size_t layer = 1;     // 1-based on the CLI
    std::size_t head = 1;
    std::size_t samples = 256;
    std::size_t pool = 1024;
    double m_scale = 1.0;
    bool main_text_threshold = false;
    std::uint64_t seed = 0;
};

std::string records_csv(const std::vector<BoundTrialRecord>& records, const char* item) {
    std::string csv = "item,trial,lambda,t,delta,m_required,m_used,lhs,rhs,violated,seed\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        csv += std::string(item) + "," + std::to_string(i) + "," + format_double(rec.lambda) +
               "," + format_double(rec.t) + "," + format_double(rec.delta) + "," +
               std::to_string(rec.m_required) + "," + std::to_string(rec.m_used) + "," +
               format_double(rec.lhs) + "," + format_double(rec.rhs) + "," +
               (rec.violated ? "1" : "0") + "," + std::to_string(rec.seed) + "\n";
    }
    return csv;
}

void summarize(const VerifyResult& result, const VerifyArgs& args, const char* item,
               double bound, Report& summary) {
    const double slack =
        3.0 * std::sqrt(bound * (1.0 - bound) / static_cast<double>(args.trials));
    const std::string prefix = std::string("item_") + item + ".";
    summary.set_double(prefix + "nql", result.nql);
    summary.set_u64(prefix + "m_required", result.m_required);
    summary.set_u64(prefix + "m_used", result.m_used);
    summary.set_double(prefix + "violation_rate", result.violation_rate);
    summary.set_double(prefix + "bound", bound);
    summary.set_double(prefix + "slack", slack);
    summary.set(prefix + "pass", result.violation_rate <= bound + slack ? "1" : "0");
}

void run_verify(const VerifyArgs& args) {
    const QKDump dump = read_qkdf(args.dump_path);
    if (args.layer < 1 || args.layer > dump.layers || args.head < 1 || args.head > dump.heads)
        throw argument_error("verify: layer/head out of range");
    if (args.item != "i" && args.item != "ii" && args.item != "both")
        throw argument_error("verify: item must be i, ii, or both");

    const Matrix data = sample_inputs(dump, args.layer - 1, args.head - 1, args.samples,
                                      derive_seed(args.seed, args.layer - 1, args.head - 1));
    VerifyConfig cfg;
    cfg.lambda = args.lambda;
    cfg.t = args.t;
    cfg.delta = args.delta;
    cfg.trials = args.trials;
    cfg.sampler = parse_sampler_kind(args.sampler);
    cfg.nql_pool_size = args.pool;
    cfg.m_scale = args.m_scale;
    cfg.main_text_threshold = args.main_text_threshold;
    cfg.seed = args.seed;

    Report summary;
    summary.set("kind", "verify-summary");
    summary.set("dump", args.dump_path);
    summary.set_double("lambda", cfg.lambda);
    summary.set_double("t", cfg.t);
    summary.set_double("delta", cfg.delta);
    summary.set_u64("trials", cfg.trials);
    summary.set("sampler", sampler_kind_name(cfg.sampler));
    summary.set_u64("layer", args.layer);
    summary.set_u64("head", args.head);
    summary.set_u64("J", args.samples);
    summary.set_u64("pool", cfg.nql_pool_size);
    summary.set_u64("seed", cfg.seed);

    std::string csv;
    if (args.item == "i" || args.item == "both") {
        const VerifyResult res = verify_theorem1_i(data, cfg);
        csv += records_csv(res.records, "i");
        summarize(res, args, "i", 2.0 * cfg.delta, summary);
    }
    if (args.item == "ii" || args.item == "both") {
        const VerifyResult res = verify_theorem1_ii(data, {}, cfg);
        if (!csv.empty()) {
            // keep a single header line
            const auto nl = records_csv(res.records, "ii");
            csv += nl.substr(nl.find('\n') + 1);
        } else {
            csv += records_csv(res.records, "ii");
        }
        summarize(res, args, "ii", cfg.delta, summary);
    }
    io::write_file_atomic(args.out, csv);
    std::cout << summary.to_string();
}

} // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"attnkern: linear-attention distillation toolkit"};
    app.require_subcommand(1);

    GenToyArgs gen;
    auto* gen_cmd = app.add_subcommand("gen-toy", "generate a toy-transformer QK dump");
    gen_cmd->set_config("--config");
    gen_cmd->add_option("--out", gen.out, "output .qkdf path")->required();
    gen_cmd->add_option("--layers", gen.cfg.layers, "number of layers");
    gen_cmd->add_option("--heads", gen.cfg.heads, "heads per layer");
    gen_cmd->add_option("--dim", gen.cfg.head_dim, "head dimension");
    gen_cmd->add_option("--seqlen", gen.cfg.seq_len, "sequence length");
    gen_cmd->add_option("--seqs", gen.cfg.sequences, "number of sequences");
    gen_cmd->add_option("--seed", gen.cfg.seed, "master seed");
    gen_cmd->add_option("--weight-scale", gen.cfg.weight_scale, "projection weight scale");
    gen_cmd->add_option("--input-mode", gen.input_mode,
                        "gaussian | lowrank:<r> | clustered:<k>");

    DofArgs dof_args;
    auto* dof_cmd = app.add_subcommand("dof", "estimate per-head degrees of freedom");
    dof_cmd->set_config("--config");
    dof_cmd->add_option("--dump", dof_args.dump_path, "input .qkdf path")->required();
    dof_cmd->add_option("--lambda", dof_args.lambda, "ridge parameter")->required();
    dof_cmd->add_option("--samples", dof_args.samples, "Gram sample size J");
    dof_cmd->add_option("--seed", dof_args.seed, "master seed");
    dof_cmd->add_option("--normalization", dof_args.normalization, "raw | mean");
    dof_cmd->add_option("--out", dof_args.out, "output report path")->required();

    AllocateArgs alloc_args;
    unsigned long long clip_value = 0;
    auto* alloc_cmd = app.add_subcommand("allocate", "budgeted per-layer feature dimensions");
    alloc_cmd->set_config("--config");
    alloc_cmd->add_option("--report", alloc_args.report_path, "dof report path")->required();
    alloc_cmd->add_option("--cost", alloc_args.cost, "average dimension budget C")->required();
    auto* clip_opt = alloc_cmd->add_option("--clip", clip_value, "cap per-layer dimension");
    alloc_cmd->add_option("--out", alloc_args.out, "output allocation path")->required();

    DistillArgs distill_args;
    auto* distill_cmd = app.add_subcommand("distill", "train feature maps layerwise");
    distill_cmd->set_config("--config");
    distill_cmd->add_option("--dump", distill_args.dump_path, "input .qkdf path")->required();
    distill_cmd->add_option("--alloc", distill_args.alloc_path, "allocation path")->required();
    distill_cmd->add_option("--loss", distill_args.loss, "l2 | softmax");
    distill_cmd->add_option("--steps", distill_args.steps, "optimizer steps per head");
    distill_cmd->add_option("--batch", distill_args.batch, "sequences per step");
    distill_cmd->add_option("--lr-z", distill_args.lr_z, "learning rate for feature locations");
    distill_cmd->add_option("--lr-alpha", distill_args.lr_alpha, "learning rate for log weights");
    distill_cmd->add_option("--seed", distill_args.seed, "master seed");
    distill_cmd->add_flag("--noncausal", distill_args.noncausal, "sum losses over all key positions");
    distill_cmd->add_option("--trace", distill_args.trace_path, "optional loss trace CSV path");
    distill_cmd->add_option("--out", distill_args.out, "output .lafc path")->required();

    EvalArgs eval_args;
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a feature checkpoint against a dump");
    eval_cmd->set_config("--config");
    eval_cmd->add_option("--dump", eval_args.dump_path, "input .qkdf path")->required();
    eval_cmd->add_option("--features", eval_args.features_path, "input .lafc path")->required();
    eval_cmd->add_option("--metric", eval_args.metric, "kernel-rmse | attn-l2");
    eval_cmd->add_option("--pairs", eval_args.pairs, "sampled pairs per head (kernel-rmse)");
    eval_cmd->add_option("--seed", eval_args.seed, "master seed");
    eval_cmd->add_option("--out", eval_args.out, "output report path")->required();

    VerifyArgs verify_args;
    auto* verify_cmd = app.add_subcommand("verify", "Monte-Carlo checks of the error bounds");
    verify_cmd->set_config("--config");
    verify_cmd->add_option("--dump", verify_args.dump_path, "input .qkdf path")->required();
    verify_cmd->add_option("--lambda", verify_args.lambda, "ridge parameter")->required();
    verify_cmd->add_option("--t", verify_args.t, "operator deviation level in (0, 3]");
    verify_cmd->add_option("--delta", verify_args.delta, "failure probability");
    verify_cmd->add_option("--trials", verify_args.trials, "Monte-Carlo trials");
    verify_cmd->add_option("--sampler", verify_args.sampler, "uniform | leverage");
    verify_cmd->add_option("--item", verify_args.item, "i | ii | both");
    verify_cmd->add_option("--layer", verify_args.layer, "1-based layer to draw data from");
    verify_cmd->add_option("--head", verify_args.head, "1-based head to draw data from");
    verify_cmd->add_option("--samples", verify_args.samples, "data sample size J");
    verify_cmd->add_option("--pool", verify_args.pool, "candidate pool size for N estimate");
    verify_cmd->add_option("--m-scale", verify_args.m_scale, "multiplier on the threshold M");
    verify_cmd->add_flag("--main-text-threshold", verify_args.main_text_threshold,
                         "use the main-text threshold form instead of the appendix form");
    verify_cmd->add_option("--seed", verify_args.seed, "master seed");
    verify_cmd->add_option("--out", verify_args.out, "output records CSV path")->required();

    try {
        app.parse(argc, argv);
        if (*clip_opt) alloc_args.clip = static_cast<std::size_t>(clip_value);
        if (*gen_cmd) run_gen_toy(gen);
        if (*dof_cmd) run_dof(dof_args);
        if (*alloc_cmd) run_allocate(alloc_args);
        if (*distill_cmd) run_distill(distill_args);
        if (*eval_cmd) run_eval(eval_args);
        if (*verify_cmd) run_verify(verify_args);
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::cerr << "error: argument: " << e.what() << "\n";
        return 2;
    } catch (const argument_error& e) {
        std::cerr << "error: argument: " << e.what() << "\n";
        return 2;
    } catch (const format_error& e) {
        std::cerr << "error: format: " << e.what() << "\n";
        return 3;
    } catch (const numerical_error& e) {
        std::cerr << "error: numerical: " << e.what() << "\n";
        return 4;
    } catch (const resource_error& e) {
        std::cerr << "error: resource: " << e.what() << "\n";
        return 5;
    } catch (const io_error& e) {
        std::cerr << "error: io: " << e.what() << "\n";
        return 6;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 1;
    }
}

} // namespace attnkern
