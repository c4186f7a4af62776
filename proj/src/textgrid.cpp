#include "voweltrace/textgrid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "voweltrace/error.hpp"
#include "voweltrace/textio.hpp"

namespace voweltrace {

namespace {

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

std::string decode_utf16(const std::string& bytes, bool big_endian) {
    std::string out;
    out.reserve(bytes.size() / 2);
    size_t n = bytes.size() & ~static_cast<size_t>(1);
    for (size_t i = 2; i < n; i += 2) {  // skip BOM
        auto b0 = static_cast<unsigned char>(bytes[i]);
        auto b1 = static_cast<unsigned char>(bytes[i + 1]);
        std::uint32_t unit = big_endian ? (b0 << 8) | b1 : (b1 << 8) | b0;
        if (unit >= 0xD800 && unit <= 0xDBFF && i + 3 < n) {
            auto c0 = static_cast<unsigned char>(bytes[i + 2]);
            auto c1 = static_cast<unsigned char>(bytes[i + 3]);
            std::uint32_t low = big_endian ? (c0 << 8) | c1 : (c1 << 8) | c0;
            if (low >= 0xDC00 && low <= 0xDFFF) {
                unit = 0x10000 + ((unit - 0xD800) << 10) + (low - 0xDC00);
                i += 2;
            }
        }
        append_utf8(out, unit);
    }
    return out;
}

std::string normalize_encoding(const std::string& raw) {
    if (raw.size() >= 2) {
        auto b0 = static_cast<unsigned char>(raw[0]);
        auto b1 = static_cast<unsigned char>(raw[1]);
        if (b0 == 0xFE && b1 == 0xFF) return decode_utf16(raw, true);
        if (b0 == 0xFF && b1 == 0xFE) return decode_utf16(raw, false);
    }
    if (raw.size() >= 3 && static_cast<unsigned char>(raw[0]) == 0xEF &&
        static_cast<unsigned char>(raw[1]) == 0xBB && static_cast<unsigned char>(raw[2]) == 0xBF)
        return raw.substr(3);
    return raw;
}

// Praat's text formats interleave numbers, quoted strings and <flags>
// with decorative labels ("xmin = ", "item [1]:"). Reading just the
// value tokens handles long and short form with one code path.
struct Token {
    enum class Kind { number, string, flag, end };
    Kind kind = Kind::end;
    double number = 0;
    std::string text;
    long line = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    const Token& peek() {
        if (!lookahead_) lookahead_ = scan();
        return *lookahead_;
    }

    Token next() {
        Token t = peek();
        lookahead_.reset();
        return t;
    }

    long line() const { return line_; }

private:
    Token scan() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '\n') {
                ++line_;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '"') {
                return scan_string();
            } else if (c == '<') {
                return scan_flag();
            } else if (std::isdigit(static_cast<unsigned char>(c)) || is_number_start(c)) {
                return scan_number();
            } else {
                // decorative word; skip to whitespace
                while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
                       text_[pos_] != '"' && text_[pos_] != '<')
                    ++pos_;
            }
        }
        return Token{Token::Kind::end, 0, "", line_};
    }

    bool is_number_start(char c) const {
        if (c != '-' && c != '+' && c != '.') return false;
        return pos_ + 1 < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])) || text_[pos_ + 1] == '.');
    }

    Token scan_string() {
        long start_line = line_;
        ++pos_;  // opening quote
        std::string value;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '"') {
                if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '"') {
                    value.push_back('"');  // doubled quote escape
                    pos_ += 2;
                    continue;
                }
                ++pos_;
                return Token{Token::Kind::string, 0, std::move(value), start_line};
            }
            if (c == '\n') ++line_;
            value.push_back(c);
            ++pos_;
        }
        throw ParseError("unbalanced quote in string", start_line);
    }

    Token scan_flag() {
        long start_line = line_;
        ++pos_;
        std::string value;
        while (pos_ < text_.size() && text_[pos_] != '>' && text_[pos_] != '\n')
            value.push_back(text_[pos_++]);
        if (pos_ >= text_.size() || text_[pos_] != '>')
            throw ParseError("unterminated <" + value + " flag", start_line);
        ++pos_;
        return Token{Token::Kind::flag, 0, std::move(value), start_line};
    }

    Token scan_number() {
        long start_line = line_;
        size_t start = pos_;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '+' ||
                c == 'e' || c == 'E')
                ++pos_;
            else
                break;
        }
        std::string_view s(text_.data() + start, pos_ - start);
        double v;
        try {
            v = parse_double(s, "value");
        } catch (const FormatError&) {
            throw ParseError("malformed number '" + std::string(s) + "'", start_line);
        }
        return Token{Token::Kind::number, v, "", start_line};
    }

    const std::string& text_;
    size_t pos_ = 0;
    long line_ = 1;
    std::optional<Token> lookahead_;
};

double expect_number(Lexer& lex, const char* what) {
    Token t = lex.next();
    if (t.kind != Token::Kind::number)
        throw ParseError(std::string("expected number for ") + what, t.line);
    return t.number;
}

std::string expect_string(Lexer& lex, const char* what) {
    Token t = lex.next();
    if (t.kind != Token::Kind::string)
        throw ParseError(std::string("expected quoted string for ") + what, t.line);
    return std::move(t.text);
}

long expect_count(Lexer& lex, const char* what) {
    Token t = lex.next();
    if (t.kind != Token::Kind::number || t.number < 0 || t.number != std::floor(t.number))
        throw ParseError(std::string("expected non-negative count for ") + what, t.line);
    return static_cast<long>(t.number);
}

}  // namespace

const IntervalTier* Alignment::find_tier(std::string_view name) const {
    for (const auto& tier : tiers)
        if (tier.name == name) return &tier;
    return nullptr;
}

Alignment parse_textgrid(const std::string& raw) {
    const std::string text = normalize_encoding(raw);
    Lexer lex(text);

    std::string file_type = expect_string(lex, "file type header");
    if (file_type != "ooTextFile")
        throw ParseError("missing \"ooTextFile\" header (got \"" + file_type + "\")", 1);
    std::string object_class = expect_string(lex, "object class header");
    if (object_class != "TextGrid")
        throw ParseError("object class is \"" + object_class + "\", not \"TextGrid\"", 1);

    Alignment alignment;
    alignment.xmin = expect_number(lex, "xmin");
    alignment.xmax = expect_number(lex, "xmax");
    if (alignment.xmin > alignment.xmax)
        throw ParseError("xmin exceeds xmax", lex.line());

    long n_tiers = 0;
    const Token& flag = lex.peek();
    if (flag.kind == Token::Kind::flag) {
        Token f = lex.next();
        if (f.text == "absent") return alignment;
        if (f.text != "exists") throw ParseError("unknown flag <" + f.text + ">", f.line);
        n_tiers = expect_count(lex, "tier count");
    } else if (flag.kind == Token::Kind::number) {
        n_tiers = expect_count(lex, "tier count");
    } else {
        throw ParseError("expected tiers flag or tier count", flag.line);
    }

    const double bounds_eps = 1e-6;
    for (long t = 0; t < n_tiers; ++t) {
        Token cls_tok = lex.next();
        if (cls_tok.kind != Token::Kind::string)
            throw ParseError("expected tier class", cls_tok.line);
        const std::string& cls = cls_tok.text;

        if (cls == "IntervalTier") {
            IntervalTier tier;
            tier.name = expect_string(lex, "tier name");
            tier.xmin = expect_number(lex, "tier xmin");
            tier.xmax = expect_number(lex, "tier xmax");
            if (tier.xmin < alignment.xmin - bounds_eps || tier.xmax > alignment.xmax + bounds_eps)
                throw ParseError("tier '" + tier.name + "' bounds exceed the TextGrid range",
                                 lex.line());
            long n = expect_count(lex, "interval count");
            tier.intervals.reserve(static_cast<size_t>(n));
            double prev_end = tier.xmin - bounds_eps;
            for (long i = 0; i < n; ++i) {
                Interval iv;
                long at = lex.line();
                iv.start = expect_number(lex, "interval xmin");
                iv.end = expect_number(lex, "interval xmax");
                iv.label = std::string(trim(expect_string(lex, "interval text")));
                if (iv.start >= iv.end)
                    throw ParseError("interval times not increasing in tier '" + tier.name + "'",
                                     at);
                if (iv.start < prev_end - bounds_eps)
                    throw ParseError("interval overlaps its predecessor in tier '" + tier.name +
                                         "'",
                                     at);
                prev_end = iv.end;
                tier.intervals.push_back(std::move(iv));
            }
            alignment.tiers.push_back(std::move(tier));
        } else if (cls == "TextTier") {
            // point tier: structure is read so the stream stays in sync
            std::string name = expect_string(lex, "tier name");
            expect_number(lex, "tier xmin");
            expect_number(lex, "tier xmax");
            long n = expect_count(lex, "point count");
            for (long i = 0; i < n; ++i) {
                expect_number(lex, "point time");
                expect_string(lex, "point mark");
            }
            alignment.warnings.push_back("skipped point tier '" + name + "'");
        } else {
            throw ParseError("unknown tier class \"" + cls + "\"", cls_tok.line);
        }
    }
    return alignment;
}

Alignment read_textgrid(const std::filesystem::path& path) {
    try {
        return parse_textgrid(read_text_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what(), e.line);
    }
}

namespace {

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        out.push_back(c);
        if (c == '"') out.push_back('"');
    }
    out.push_back('"');
    return out;
}

}  // namespace

std::string serialize_textgrid(const Alignment& alignment) {
    std::string out;
    out += "File type = \"ooTextFile\"\n";
    out += "Object class = \"TextGrid\"\n\n";
    out += "xmin = " + format_shortest(alignment.xmin) + "\n";
    out += "xmax = " + format_shortest(alignment.xmax) + "\n";
    if (alignment.tiers.empty()) {
        out += "tiers? <absent>\n";
        return out;
    }
    out += "tiers? <exists>\n";
    out += "size = " + std::to_string(alignment.tiers.size()) + "\n";
    out += "item []:\n";
    for (size_t t = 0; t < alignment.tiers.size(); ++t) {
        const IntervalTier& tier = alignment.tiers[t];
        out += "    item [" + std::to_string(t + 1) + "]:\n";
        out += "        class = \"IntervalTier\"\n";
        out += "        name = " + quote(tier.name) + "\n";
        out += "        xmin = " + format_shortest(tier.xmin) + "\n";
        out += "        xmax = " + format_shortest(tier.xmax) + "\n";
        out += "        intervals: size = " + std::to_string(tier.intervals.size()) + "\n";
        for (size_t i = 0; i < tier.intervals.size(); ++i) {
            const Interval& iv = tier.intervals[i];
            out += "        intervals [" + std::to_string(i + 1) + "]:\n";
            out += "            xmin = " + format_shortest(iv.start) + "\n";
            out += "            xmax = " + format_shortest(iv.end) + "\n";
            out += "            text = " + quote(iv.label) + "\n";
        }
    }
    return out;
}

const LabelMap& default_label_map() {
    // SAMPA and IPA spellings per category; case-sensitive on purpose
    // (SAMPA "I" is KIT, "i"/"i:" FLEECE).
    static const LabelMap map = {
        {"V", VowelCategory::STRUT},    {"ʌ", VowelCategory::STRUT},
        {"ɐ", VowelCategory::STRUT},    {"Q", VowelCategory::LOT},
        {"O", VowelCategory::LOT},      {"ɒ", VowelCategory::LOT},
        {"ɔ", VowelCategory::LOT},      {"I", VowelCategory::KIT},
        {"ɪ", VowelCategory::KIT},      {"{", VowelCategory::TRAP},
        {"æ", VowelCategory::TRAP},     {"U", VowelCategory::FOOT},
        {"ʊ", VowelCategory::FOOT},     {"e", VowelCategory::DRESS},
        {"E", VowelCategory::DRESS},    {"ɛ", VowelCategory::DRESS},
        {"A:", VowelCategory::START},   {"ɑː", VowelCategory::START},
        {"ɑ:", VowelCategory::START},   {"a:", VowelCategory::START},
        {"3:", VowelCategory::NURSE},   {"ɜː", VowelCategory::NURSE},
        {"ɜ:", VowelCategory::NURSE},   {"}:", VowelCategory::GOOSE},
        {"u:", VowelCategory::GOOSE},   {"ʉː", VowelCategory::GOOSE},
        {"ʉ:", VowelCategory::GOOSE},   {"u", VowelCategory::GOOSE},
        {"O:", VowelCategory::THOUGHT}, {"oː", VowelCategory::THOUGHT},
        {"o:", VowelCategory::THOUGHT}, {"ɔː", VowelCategory::THOUGHT},
        {"ɔ:", VowelCategory::THOUGHT}, {"i:", VowelCategory::FLEECE},
        {"iː", VowelCategory::FLEECE},  {"i", VowelCategory::FLEECE},
    };
    return map;
}

LabelMap parse_label_map(const std::string& text) {
    LabelMap map;
    long line_no = 0;
    for (std::string_view line : split_lines(text)) {
        ++line_no;
        std::string_view content = trim(line);
        if (content.empty() || content.front() == '#') continue;
        size_t eq = content.find('=');
        if (eq == std::string_view::npos)
            throw ParseError("expected 'phone_label = CATEGORY'", line_no);
        std::string label(trim(content.substr(0, eq)));
        std::string category(trim(content.substr(eq + 1)));
        if (label.empty()) throw ParseError("empty phone label", line_no);
        auto vowel = vowel_from_lexical_word(category);
        if (!vowel)
            throw ParseError("unknown vowel category '" + category + "'", line_no);
        map[label] = *vowel;
    }
    return map;
}

LabelMap read_label_map(const std::filesystem::path& path) {
    return parse_label_map(read_text_file(path));
}

std::vector<VowelSegment> extract_vowel_segments(const Alignment& alignment,
                                                 std::string_view phone_tier,
                                                 const std::optional<std::string>& word_tier,
                                                 const LabelMap& label_map,
                                                 std::string clip_ref) {
    const IntervalTier* phones = alignment.find_tier(phone_tier);
    if (phones == nullptr) {
        std::string available;
        for (const auto& tier : alignment.tiers) {
            if (!available.empty()) available += ", ";
            available += "'" + tier.name + "'";
        }
        throw LookupError("tier '" + std::string(phone_tier) + "' not found; available tiers: " +
                          (available.empty() ? "none" : available));
    }
    const IntervalTier* words = nullptr;
    if (word_tier) {
        words = alignment.find_tier(*word_tier);
        if (words == nullptr)
            throw LookupError("word tier '" + *word_tier + "' not found");
    }

    std::vector<VowelSegment> segments;
    for (const Interval& iv : phones->intervals) {
        auto it = label_map.find(std::string(trim(iv.label)));
        if (it == label_map.end()) continue;
        VowelSegment seg;
        seg.vowel = it->second;
        seg.start = iv.start;
        seg.end = iv.end;
        seg.clip_ref = clip_ref;
        seg.too_short = (iv.end - iv.start) < 0.030;
        if (words != nullptr) {
            double mid = 0.5 * (iv.start + iv.end);
            for (const Interval& w : words->intervals) {
                if (w.start <= mid && mid < w.end) {
                    seg.word = w.label;
                    break;
                }
            }
        }
        segments.push_back(std::move(seg));
    }
    return segments;  // tier order is start order
}

}  // namespace voweltrace
