#include "taskvec/backend/toy.hpp"

#include <algorithm>
#include <map>

#include "taskvec/backend/toy_layout.hpp"
#include "taskvec/common/errors.hpp"

namespace taskvec::backend {

using namespace toy;

namespace toy {

const std::vector<std::string>& vocab() {
    static const std::vector<std::string> table = [] {
        std::vector<std::string> v(kVocabSize);
        v[kNewline] = "\n";
        v[kUnknown] = "\xEF\xBF\xBD";  // U+FFFD replacement character
        for (int i = 0; i < kAlphabet; ++i) {
            char lower = static_cast<char>('a' + i);
            char upper = static_cast<char>('A' + i);
            v[static_cast<size_t>(kLowerBase + i)] = std::string(1, lower);
            v[static_cast<size_t>(kSpaceLowerBase + i)] = std::string(" ") + lower;
            v[static_cast<size_t>(kUpperBase + i)] = std::string(1, upper);
            v[static_cast<size_t>(kSpaceUpperBase + i)] = std::string(" ") + upper;
        }
        v[kQuestion] = "?";
        v[kSpaceQuestion] = " ?";
        v[kArrow] = "->";
        v[kSpaceArrow] = " ->";
        v[kJsonOpen] = "{\"";
        v[kJsonColon] = "\":\"";
        v[kJsonComma] = "\",\"";
        v[kJsonClose] = "\"}";
        const char* tags[kNumTags] = {"color", "city", "model", "year", "price"};
        for (int i = 0; i < kNumTags; ++i) {
            v[static_cast<size_t>(kTagBase + i)] = tags[i];
            v[static_cast<size_t>(kSpaceTagBase + i)] = std::string(" ") + tags[i];
        }
        v[kSpaceJsonOpen] = " {\"";
        return v;
    }();
    return table;
}

std::string letter_task_output(int task, char letter) {
    if (letter < 'a' || letter >= 'a' + kAlphabet)
        throw spec_error("letter tasks cover a.." +
                         std::string(1, static_cast<char>('a' + kAlphabet - 1)) + ", got '" +
                         std::string(1, letter) + "'");
    int ridx = letter_task_result(task, letter - 'a');
    if (ridx < 0) throw spec_error("not a letter task: " + std::to_string(task));
    char c = static_cast<char>((letter_task_uppercase(task) ? 'A' : 'a') + ridx);
    return std::string(2, c);
}

}  // namespace toy

namespace {

size_t utf8_step(const std::string& text, size_t pos) {
    unsigned char c = static_cast<unsigned char>(text[pos]);
    size_t len = 1;
    if ((c & 0xf8) == 0xf0) len = 4;
    else if ((c & 0xf0) == 0xe0) len = 3;
    else if ((c & 0xe0) == 0xc0) len = 2;
    return std::min(len, text.size() - pos);
}

// Token id whose one-hot section marks this state's token, or -1.
int tok_at(const Eigen::MatrixXd& layer, size_t p) {
    Eigen::Index best = 0;
    double mx = layer.col(static_cast<long>(p)).segment(kChanToken, kVocabSize).maxCoeff(&best);
    return mx > 0 ? static_cast<int>(best) : -1;
}

size_t line_start(const Eigen::MatrixXd& layer, size_t p) {
    size_t ls = 0;
    for (size_t q = 0; q < p; ++q)
        if (tok_at(layer, q) == kNewline) ls = q + 1;
    return ls;
}

long last_separator(const Eigen::MatrixXd& layer, size_t from, size_t to_inclusive) {
    long sep = -1;
    for (size_t q = from; q <= to_inclusive; ++q)
        if (is_separator(tok_at(layer, q))) sep = static_cast<long>(q);
    return sep;
}

// The i-th key token (1-based) of the most recently completed object strictly
// before `before`, or -1 when no completed object or key exists.
int schema_key(const Eigen::MatrixXd& layer, size_t before, int index) {
    long close = -1;
    for (size_t q = 0; q < before; ++q)
        if (tok_at(layer, q) == kJsonClose) close = static_cast<long>(q);
    if (close < 0) return -1;
    long open = -1;
    for (long q = close - 1; q >= 0; --q) {
        int t = tok_at(layer, static_cast<size_t>(q));
        if (is_json_open(t)) {
            open = q;
            break;
        }
        if (t == kJsonClose) return -1;  // malformed nesting
    }
    if (open < 0) return -1;
    std::vector<long> key_positions;
    if (open + 1 < close) key_positions.push_back(open + 1);
    for (long q = open + 1; q < close; ++q)
        if (tok_at(layer, static_cast<size_t>(q)) == kJsonComma && q + 1 < close)
            key_positions.push_back(q + 1);
    if (index < 1 || static_cast<size_t>(index) > key_positions.size()) return -1;
    int id = tok_at(layer, static_cast<size_t>(key_positions[static_cast<size_t>(index - 1)]));
    return is_bare_tag(id) ? id : -1;
}

struct Directive {
    int op = -1;
    int arg = -1;  // token id, -1 for none
};

void write_directive(Eigen::MatrixXd& out, size_t p, const Directive& d) {
    if (d.op >= 0) out(kChanDirOp + d.op, static_cast<long>(p)) = 1.0;
    if (d.arg >= 0) out(kChanDirArg + d.arg, static_cast<long>(p)) = 1.0;
}

// Block 2's case analysis for position p, reading layer-1 states.
Directive directive_for(const Eigen::MatrixXd& below, size_t p, Eigen::VectorXd* belief_out) {
    int t = tok_at(below, p);
    size_t ls = line_start(below, p);

    if (t == kJsonClose) return {kOpEmit, kNewline};

    // Open object: scan back for the nearest brace-open not yet closed.
    long open = -1;
    for (long q = static_cast<long>(p); q >= static_cast<long>(ls); --q) {
        int tq = tok_at(below, static_cast<size_t>(q));
        if (static_cast<size_t>(q) != p && tq == kJsonClose) break;
        if (is_json_open(tq)) {
            open = q;
            break;
        }
    }
    if (open >= 0) {
        size_t g = static_cast<size_t>(open);
        if (is_json_open(t)) {
            int key = schema_key(below, g, 1);
            return {kOpEmit, key >= 0 ? key : kQuestion};
        }
        if (t == kJsonComma) {
            int commas = 0;
            for (size_t q = g; q <= p; ++q)
                if (tok_at(below, q) == kJsonComma) ++commas;
            int key = schema_key(below, g, commas + 1);
            return {kOpEmit, key >= 0 ? key : kQuestion};
        }
        if (t == kJsonColon) {
            int prev = tok_at(below, p - 1);
            return {kOpLookup, tag_identity(prev) >= 0 ? prev : -1};
        }
        int prev = tok_at(below, p - 1);
        if (is_json_open(prev) || prev == kJsonComma) return {kOpEmit, kJsonColon};
        if (prev == kJsonColon) {
            int colons = 0;
            for (size_t q = g; q <= p; ++q)
                if (tok_at(below, q) == kJsonColon) ++colons;
            return {kOpEmit, colons >= 3 ? kJsonClose : kJsonComma};
        }
        return {kOpEmit, kQuestion};
    }

    if (is_separator(t)) {
        Eigen::VectorXd counts = Eigen::VectorXd::Zero(kNumTasks);
        for (size_t q = 0; q < p; ++q)
            counts += below.col(static_cast<long>(q)).segment(kChanPair, kNumTasks);
        double total = counts.sum();
        if (total > 0) {
            *belief_out = counts / total;
            return {kOpApply1, -1};
        }
        for (size_t q = ls; q < p; ++q)
            if (tag_identity(tok_at(below, q)) >= 0) return {kOpEmit, kJsonOpen};
        return {kOpApply1, -1};
    }

    long sep = last_separator(below, ls, p);
    if (sep >= 0 && static_cast<long>(p) > sep) {
        size_t k = p - static_cast<size_t>(sep);
        if (k == 1) return {kOpApply2, -1};
        if (k == 2) return {kOpEmit, kNewline};
        return {kOpEmit, kQuestion};
    }

    return {kOpEmit, kQuestion};
}

// Block 3: turn the directive at p into a planned next token, reading context
// from layer-2 states.
int plan_for(const Eigen::MatrixXd& below, size_t p) {
    const auto col = below.col(static_cast<long>(p));

    Eigen::Index op_idx = 0;
    double op_max = col.segment(kChanDirOp, kNumOps).maxCoeff(&op_idx);
    if (op_max <= 0) return kQuestion;
    int op = static_cast<int>(op_idx);

    Eigen::Index arg_idx = 0;
    double arg_max = col.segment(kChanDirArg, kVocabSize).maxCoeff(&arg_idx);
    int arg = arg_max > 0 ? static_cast<int>(arg_idx) : -1;

    if (op == kOpEmit) return arg >= 0 ? arg : kQuestion;

    if (op == kOpApply1 || op == kOpApply2) {
        bool first = op == kOpApply1;
        int unknown = first ? kSpaceQuestion : kQuestion;
        long sp = last_separator(below, 0, p);
        if (sp < 0) return unknown;
        Eigen::VectorXd belief = below.col(sp).segment(kChanBelief, kNumTasks);
        if (belief.sum() <= 0) return unknown;
        Eigen::Index task_idx = 0;
        belief.maxCoeff(&task_idx);
        int task = static_cast<int>(task_idx);
        if (task == kTaskSchema) return first ? kJsonOpen : kQuestion;
        if (sp == 0) return unknown;
        int qtok = tok_at(below, static_cast<size_t>(sp - 1));
        if (!is_bare_lower(qtok)) return unknown;
        int ridx = letter_task_result(task, qtok - kLowerBase);
        if (letter_task_uppercase(task))
            return (first ? kSpaceUpperBase : kUpperBase) + ridx;
        return (first ? kSpaceLowerBase : kLowerBase) + ridx;
    }

    // kOpLookup: the argument tag's value in this line's description region.
    int tag = arg >= 0 ? tag_identity(arg) : -1;
    if (tag < 0) return kQuestion;
    size_t ls = line_start(below, p);
    long sp = last_separator(below, ls, p);
    if (sp < 0) return kQuestion;
    for (size_t q = ls; q < static_cast<size_t>(sp); ++q) {
        if (tag_identity(tok_at(below, q)) != tag) continue;
        if (q + 1 < static_cast<size_t>(sp)) {
            int v = tok_at(below, q + 1);
            if (is_space_lower(v)) return kLowerBase + (v - kSpaceLowerBase);
            if (is_bare_lower(v)) return v;
        }
        break;
    }
    return kQuestion;
}

using OverrideMap = std::map<std::pair<int, size_t>, Eigen::VectorXd>;

struct ForwardPass {
    std::vector<Eigen::MatrixXd> natural;  // what each block computed
};

// Full forward pass. Downstream blocks consume overridden states; `natural`
// keeps the pre-replacement values for capture.
ForwardPass run_forward(const TokenSeq& tokens, const OverrideMap& overrides) {
    const size_t n = tokens.size();
    ForwardPass pass;
    pass.natural.assign(kNumLayers,
                        Eigen::MatrixXd::Zero(kHiddenWidth, static_cast<long>(n)));
    std::vector<Eigen::MatrixXd> eff(kNumLayers);

    auto apply_overrides = [&](int layer) {
        eff[static_cast<size_t>(layer)] = pass.natural[static_cast<size_t>(layer)];
        for (const auto& [coord, vec] : overrides)
            if (coord.first == layer)
                eff[static_cast<size_t>(layer)].col(static_cast<long>(coord.second)) = vec;
    };

    // Block 0: token identity and structural flags from the raw ids.
    auto& l0 = pass.natural[0];
    for (size_t p = 0; p < n; ++p) {
        int id = tokens.ids[p];
        if (id < 0 || id >= kVocabSize)
            throw spec_error("token id " + std::to_string(id) + " outside the toy vocabulary");
        long c = static_cast<long>(p);
        l0(kChanToken + id, c) = 1.0;
        if (is_separator(id)) l0(kChanFlagSep, c) = 1.0;
        if (id == kNewline) l0(kChanFlagNewline, c) = 1.0;
        if (p == 0 || tokens.ids[p - 1] == kNewline) l0(kChanFlagLineStart, c) = 1.0;
    }
    apply_overrides(0);

    // Block 1: demo-pair recognition.
    auto& l1 = pass.natural[1];
    l1 = eff[0];
    for (size_t p = 0; p < n; ++p) {
        long c = static_cast<long>(p);
        l1.col(c).segment(kChanPair, kNumTasks).setZero();
        int t = tok_at(eff[0], p);
        if (t == kJsonClose) {
            l1(kChanPair + kTaskSchema, c) = 1.0;
            continue;
        }
        if (p < 2) continue;
        bool first_answer = is_space_lower(t) ||
                            (t >= kSpaceUpperBase && t < kSpaceUpperBase + kAlphabet);
        if (!first_answer) continue;
        if (!is_separator(tok_at(eff[0], p - 1))) continue;
        int input_tok = tok_at(eff[0], p - 2);
        if (!is_bare_lower(input_tok)) continue;
        int letter = input_tok - kLowerBase;
        for (int task = 0; task < kTaskSchema; ++task) {
            int ridx = letter_task_result(task, letter);
            int expect = letter_task_uppercase(task) ? kSpaceUpperBase + ridx
                                                     : kSpaceLowerBase + ridx;
            if (t == expect) {
                l1(kChanPair + task, c) = 1.0;
                break;
            }
        }
    }
    apply_overrides(1);

    // Block 2: task belief at separators, a directive everywhere.
    auto& l2 = pass.natural[2];
    l2 = eff[1];
    for (size_t p = 0; p < n; ++p) {
        long c = static_cast<long>(p);
        l2.col(c).segment(kChanBelief, kNumTasks).setZero();
        l2.col(c).segment(kChanDirOp, kNumOps).setZero();
        l2.col(c).segment(kChanDirArg, kVocabSize).setZero();
        Eigen::VectorXd belief = Eigen::VectorXd::Zero(kNumTasks);
        Directive d = directive_for(eff[1], p, &belief);
        l2.col(c).segment(kChanBelief, kNumTasks) = belief;
        write_directive(l2, p, d);
    }
    apply_overrides(2);

    // Block 3: directive execution into the planned-token channel.
    auto& l3 = pass.natural[3];
    l3 = eff[2];
    for (size_t p = 0; p < n; ++p) {
        long c = static_cast<long>(p);
        l3.col(c).segment(kChanPlan, kVocabSize).setZero();
        l3(kChanPlan + plan_for(eff[2], p), c) = 1.0;
    }
    apply_overrides(3);

    // Block 4: carry-through. Only the readout consumes layer 4, so a
    // layer-4 override is applied there, never here.
    pass.natural[4] = eff[3];

    return pass;
}

// Readout: exact one-hot over the planned token at the last position.
Eigen::VectorXd readout(const Eigen::MatrixXd& top, const OverrideMap& overrides, size_t n) {
    Eigen::VectorXd last = top.col(static_cast<long>(n - 1));
    auto it = overrides.find({kNumLayers - 1, n - 1});
    if (it != overrides.end()) last = it->second;
    Eigen::VectorXd dist = Eigen::VectorXd::Zero(kVocabSize);
    Eigen::Index plan = 0;
    double mx = last.segment(kChanPlan, kVocabSize).maxCoeff(&plan);
    dist[mx > 0 ? plan : kQuestion] = 1.0;
    return dist;
}

}  // namespace

ToyBackend::ToyBackend(ToyConfig config) : config_(config) {}

std::string ToyBackend::id() const { return "toy-v1"; }
int ToyBackend::num_layers() const { return kNumLayers; }
int ToyBackend::hidden_width() const { return kHiddenWidth; }
size_t ToyBackend::context_limit() const { return config_.context_limit; }

TokenSeq ToyBackend::tokenize(const std::string& text) const {
    const auto& table = vocab();
    TokenSeq out;
    size_t pos = 0;
    while (pos < text.size()) {
        int best_id = -1;
        size_t best_len = 0;
        for (int id = 0; id < kVocabSize; ++id) {
            const std::string& surface = table[static_cast<size_t>(id)];
            if (surface.size() > best_len && text.compare(pos, surface.size(), surface) == 0) {
                best_id = id;
                best_len = surface.size();
            }
        }
        if (best_id < 0) {
            out.push_back(kUnknown, table[kUnknown]);
            pos += utf8_step(text, pos);
        } else {
            out.push_back(best_id, table[static_cast<size_t>(best_id)]);
            pos += best_len;
        }
    }
    return out;
}

std::string ToyBackend::detokenize(const TokenSeq& tokens) const {
    std::string out;
    for (const auto& t : tokens.texts) out += t;
    return out;
}

std::pair<TokenSeq, std::vector<std::pair<size_t, size_t>>> ToyBackend::tokenize_with_offsets(
    const std::string& text) const {
    TokenSeq toks;
    std::vector<std::pair<size_t, size_t>> offsets;
    const auto& table = vocab();
    size_t pos = 0;
    while (pos < text.size()) {
        int best_id = -1;
        size_t best_len = 0;
        for (int id = 0; id < kVocabSize; ++id) {
            const std::string& surface = table[static_cast<size_t>(id)];
            if (surface.size() > best_len && text.compare(pos, surface.size(), surface) == 0) {
                best_id = id;
                best_len = surface.size();
            }
        }
        if (best_id < 0) {
            best_id = kUnknown;
            best_len = utf8_step(text, pos);
            toks.push_back(kUnknown, table[kUnknown]);
        } else {
            toks.push_back(best_id, table[static_cast<size_t>(best_id)]);
        }
        offsets.emplace_back(pos, pos + best_len);
        pos += best_len;
    }
    return {std::move(toks), std::move(offsets)};
}

namespace {

OverrideMap build_overrides(const std::vector<InterventionSpec>& interventions, size_t limit,
                            bool positions_must_exist, size_t existing) {
    OverrideMap map;
    for (const auto& iv : interventions) {
        if (iv.layer < 0 || iv.layer >= kNumLayers)
            throw spec_error("intervention layer " + std::to_string(iv.layer) +
                             " outside 0.." + std::to_string(kNumLayers - 1));
        if (iv.vector.size() != kHiddenWidth)
            throw spec_error("intervention vector has width " + std::to_string(iv.vector.size()) +
                             ", backend width is " + std::to_string(kHiddenWidth));
        if (iv.position >= limit)
            throw spec_error("intervention position " + std::to_string(iv.position) +
                             " can never exist (limit " + std::to_string(limit) + ")");
        if (positions_must_exist && iv.position >= existing)
            throw spec_error("intervention position " + std::to_string(iv.position) +
                             " outside the sequence");
        if (!map.emplace(std::make_pair(iv.layer, iv.position), iv.vector).second)
            throw spec_error("two interventions target layer " + std::to_string(iv.layer) +
                             ", position " + std::to_string(iv.position));
    }
    return map;
}

}  // namespace

HiddenCapture ToyBackend::forward_capture(const TokenSeq& tokens,
                                          const std::vector<InterventionSpec>& interventions) const {
    if (tokens.empty()) throw spec_error("cannot run a forward pass over zero tokens");
    if (tokens.size() > config_.context_limit)
        throw capacity_error("sequence of " + std::to_string(tokens.size()) +
                             " tokens exceeds the context limit of " +
                             std::to_string(config_.context_limit));
    OverrideMap overrides = build_overrides(interventions, tokens.size(), true, tokens.size());
    ForwardPass pass = run_forward(tokens, overrides);
    HiddenCapture capture(kNumLayers, kHiddenWidth, tokens.size());
    for (int l = 0; l < kNumLayers; ++l) capture.layer(l) = pass.natural[static_cast<size_t>(l)];
    return capture;
}

GenerationResult ToyBackend::generate(const TokenSeq& prompt,
                                      const std::vector<InterventionSpec>& interventions,
                                      const GenerationParams& params) const {
    if (prompt.empty()) throw spec_error("cannot generate from an empty prompt");
    if (prompt.size() + params.max_tokens > config_.context_limit)
        throw capacity_error("prompt of " + std::to_string(prompt.size()) + " plus " +
                             std::to_string(params.max_tokens) +
                             " new tokens exceeds the context limit of " +
                             std::to_string(config_.context_limit));
    OverrideMap all =
        build_overrides(interventions, prompt.size() + params.max_tokens, false, prompt.size());

    const auto& table = vocab();
    TokenSeq seq = prompt;
    GenerationResult result;
    result.stop_reason = StopReason::max_tokens;

    for (size_t step = 0; step < params.max_tokens; ++step) {
        // No key-value cache: every step recomputes the full pass, so an
        // intervention keeps holding its position on later steps too.
        OverrideMap active;
        for (const auto& [coord, vec] : all)
            if (coord.second < seq.size()) active.emplace(coord, vec);
        ForwardPass pass = run_forward(seq, active);
        Eigen::VectorXd dist = readout(pass.natural[kNumLayers - 1], active, seq.size());
        Eigen::Index next = 0;
        dist.maxCoeff(&next);
        int id = static_cast<int>(next);
        seq.push_back(id, table[static_cast<size_t>(id)]);
        result.tokens.push_back(id, table[static_cast<size_t>(id)]);
        result.distributions.push_back(dist);
        bool is_stop = std::find(params.stop_texts.begin(), params.stop_texts.end(),
                                 table[static_cast<size_t>(id)]) != params.stop_texts.end();
        if (is_stop) {
            result.stop_reason = StopReason::stop_token;
            break;
        }
    }
    return result;
}

dataset::TaskSet toy_letter_taskset() {
    struct Def {
        int task;
        const char* instruction;
    };
    const Def defs[] = {
        {kTaskUpper, "Uppercase the given letter and write it twice."},
        {kTaskIdent, "Copy the given letter twice."},
        {kTaskNext, "Advance the given letter and write it twice."},
        {kTaskPrev, "Rewind the given letter and write it twice."},
    };
    dataset::TaskSet set;
    for (const auto& def : defs) {
        dataset::TaskRecord rec;
        rec.instruction = def.instruction;
        rec.task_id = dataset::make_task_id(rec.instruction);
        rec.category = dataset::derive_category(rec.instruction);
        rec.source = dataset::Source::fixture;
        rec.generator = "toy";
        for (int i = 0; i < kAlphabet; ++i) {
            char letter = static_cast<char>('a' + i);
            rec.pairs.push_back(
                {std::string(1, letter), letter_task_output(def.task, letter)});
        }
        set.tasks.push_back(std::move(rec));
    }
    set.manifest = dataset::tally_categories(set);
    return set;
}

}  // namespace taskvec::backend
