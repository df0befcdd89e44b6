#pragma once

// The toy model's fixed tables: vocabulary, residual-stream channel layout,
// and the letter-task registry. These are the model's published constants
// (the equivalent of a real checkpoint's tokenizer and config), shared by the
// backend implementation and by reference implementations in tests. The block
// behavior itself lives in toy.cpp only.

#include <array>
#include <string>
#include <vector>

namespace taskvec::backend::toy {

// ---- Vocabulary -----------------------------------------------------------
//
//   0        "\n"
//   1        unknown (surface U+FFFD, consumes one source code point)
//   2..11    "a".."j"
//   12..21   " a".." j"
//   22..31   "A".."J"
//   32..41   " A".." J"
//   42, 43   "?", " ?"
//   44, 45   "->", " ->"
//   46       left brace-quote   {"
//   47       quote-colon-quote  ":"
//   48       quote-comma-quote  ","
//   49       quote-right-brace  "}
//   50..54   color city model year price
//   55..59   the same five with a leading space
//   60       space left brace-quote  (" {" plus quote)

inline constexpr int kNewline = 0;
inline constexpr int kUnknown = 1;
inline constexpr int kLowerBase = 2;        // bare a..j
inline constexpr int kSpaceLowerBase = 12;  // " a".." j"
inline constexpr int kUpperBase = 22;       // bare A..J
inline constexpr int kSpaceUpperBase = 32;  // " A".." J"
inline constexpr int kQuestion = 42;
inline constexpr int kSpaceQuestion = 43;
inline constexpr int kArrow = 44;
inline constexpr int kSpaceArrow = 45;
inline constexpr int kJsonOpen = 46;
inline constexpr int kJsonColon = 47;
inline constexpr int kJsonComma = 48;
inline constexpr int kJsonClose = 49;
inline constexpr int kTagBase = 50;       // color city model year price
inline constexpr int kSpaceTagBase = 55;
inline constexpr int kSpaceJsonOpen = 60;
inline constexpr int kVocabSize = 61;

inline constexpr int kAlphabet = 10;  // letters a..j
inline constexpr int kNumTags = 5;    // color city model year price

const std::vector<std::string>& vocab();

inline bool is_separator(int id) { return id == kArrow || id == kSpaceArrow; }
inline bool is_json_open(int id) { return id == kJsonOpen || id == kSpaceJsonOpen; }
inline bool is_bare_lower(int id) { return id >= kLowerBase && id < kLowerBase + kAlphabet; }
inline bool is_space_lower(int id) {
    return id >= kSpaceLowerBase && id < kSpaceLowerBase + kAlphabet;
}
inline bool is_bare_tag(int id) { return id >= kTagBase && id < kTagBase + kNumTags; }

// Tag index 0..4 for either variant, -1 otherwise.
inline int tag_identity(int id) {
    if (id >= kTagBase && id < kTagBase + kNumTags) return id - kTagBase;
    if (id >= kSpaceTagBase && id < kSpaceTagBase + kNumTags) return id - kSpaceTagBase;
    return -1;
}

// ---- Residual-stream channel layout --------------------------------------
//
// Every state is a width-200 vector carved into named sections. Blocks copy
// the incoming state forward and overwrite only their own sections, so layer
// l's state carries everything written at layers <= l.

inline constexpr int kChanToken = 0;                       // one-hot token id [61]
inline constexpr int kChanFlagSep = kVocabSize;            // position holds a separator
inline constexpr int kChanFlagNewline = kVocabSize + 1;    // position holds "\n"
inline constexpr int kChanFlagLineStart = kVocabSize + 2;  // first token of its line
inline constexpr int kChanPair = kVocabSize + 3;           // demo-pair task evidence [5]
inline constexpr int kNumTasks = 5;                        // upper ident next prev schema
inline constexpr int kChanBelief = kChanPair + kNumTasks;  // normalized task belief [5]
inline constexpr int kChanDirOp = kChanBelief + kNumTasks; // directive opcode one-hot [4]
inline constexpr int kNumOps = 4;
inline constexpr int kChanDirArg = kChanDirOp + kNumOps;   // directive argument token [61]
inline constexpr int kChanPlan = kChanDirArg + kVocabSize; // planned next token [61]
inline constexpr int kHiddenWidth = kChanPlan + kVocabSize;  // 200

static_assert(kHiddenWidth == 200);

// Directive opcodes (one-hot in the DirOp section).
inline constexpr int kOpEmit = 0;    // emit the argument token (or "?" when argless)
inline constexpr int kOpApply1 = 1;  // first answer token of the believed task
inline constexpr int kOpApply2 = 2;  // second answer token of the believed task
inline constexpr int kOpLookup = 3;  // value of the argument tag in this line's description

// Task ids inside the pair/belief sections.
inline constexpr int kTaskUpper = 0;
inline constexpr int kTaskIdent = 1;
inline constexpr int kTaskNext = 2;
inline constexpr int kTaskPrev = 3;
inline constexpr int kTaskSchema = 4;

// The model's computation is concentrated at one depth: the block that turns
// accumulated demo evidence into a task belief and per-position directives.
inline constexpr int kNumLayers = 5;
inline constexpr int kEncodingLayer = 2;

// ---- Letter tasks ---------------------------------------------------------

// Output letter index for a letter task given the query letter index.
inline int letter_task_result(int task, int letter_index) {
    switch (task) {
        case kTaskUpper:
        case kTaskIdent: return letter_index;
        case kTaskNext: return (letter_index + 1) % kAlphabet;
        case kTaskPrev: return (letter_index + kAlphabet - 1) % kAlphabet;
        default: return -1;
    }
}

inline bool letter_task_uppercase(int task) { return task == kTaskUpper; }

// Two-character answer text, e.g. upper("b") == "BB", next("b") == "cc".
std::string letter_task_output(int task, char letter);

}  // namespace taskvec::backend::toy
