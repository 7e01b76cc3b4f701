#include "surf/index.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "surf/binary_io.hpp"

namespace surf {

namespace fs = std::filesystem;

namespace {

constexpr Tag kVocabFileTag = make_tag("SRFV");
constexpr Tag kTextTag = make_tag("SRFC");
constexpr Tag kDocsTag = make_tag("SRFM");
constexpr Tag kSaTag = make_tag("SRFS");
constexpr Tag kLcpTag = make_tag("SRFL");
constexpr Tag kDocArrayTag = make_tag("SRFD");
constexpr Tag kCountsTag = make_tag("SRFH");
constexpr Tag kRepTreeTag = make_tag("SRFR");
constexpr Tag kRestrictedTag = make_tag("SRF1");

std::string hex64(std::uint64_t v) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = digits[v & 0xf];
    return s;
}

std::uint64_t parse_u64(std::string_view s, int base, std::string_view what) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw format_error("manifest: bad " + std::string(what) + " '" + std::string(s) + "'");
    return v;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::uint64_t checksum(std::string_view bytes) {
    Fnv1a h;
    h.update(bytes.data(), bytes.size());
    return h.digest();
}

void write_u64_array(std::ostream& os, std::span<const std::uint64_t> v) {
    write_u64(os, v.size());
    for (auto x : v) write_u64(os, x);
}

std::vector<std::uint64_t> read_u64_array(std::istream& is, std::uint64_t expected) {
    const auto count = read_u64(is);
    if (count != expected) throw format_error("array length " + std::to_string(count) + ", expected " + std::to_string(expected));
    std::vector<std::uint64_t> v(count);
    for (auto& x : v) x = read_u64(is);
    return v;
}

void expect_end(std::istream& is, const std::string& what) {
    if (is.peek() != std::char_traits<char>::eof()) throw format_error(what + ": trailing bytes");
}

}  // namespace

Variant parse_variant(std::string_view name) {
    if (name == "d") return Variant::d;
    if (name == "dr") return Variant::dr;
    if (name == "d1r1") return Variant::d1r1;
    throw std::invalid_argument("unknown variant '" + std::string(name) + "'");
}

std::string_view to_string(Variant v) {
    switch (v) {
        case Variant::d: return "d";
        case Variant::dr: return "dr";
        case Variant::d1r1: return "d1r1";
    }
    return "?";
}

std::string IndexManifest::to_text() const {
    std::ostringstream os;
    os << "format=surf-index\n";
    os << "version=" << version << "\n";
    os << "variant=" << to_string(variant) << "\n";
    os << "fingerprint=" << hex64(fingerprint) << "\n";
    os << "documents=" << num_docs << "\n";
    os << "tokens=" << num_tokens << "\n";
    for (const auto& c : components)
        os << "component=" << c.tag << " " << c.file << " " << c.bytes << " " << hex64(c.checksum) << "\n";
    return os.str();
}

IndexManifest IndexManifest::parse(std::string_view text) {
    IndexManifest m;
    std::map<std::string, std::string, std::less<>> seen;
    std::istringstream in{std::string(text)};
    for (std::string line; std::getline(in, line);) {
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw format_error("manifest: malformed line '" + line + "'");
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        if (key == "component") {
            const auto parts = split_whitespace(value);
            if (parts.size() != 4 || parts[0].size() != 4) throw format_error("manifest: malformed component '" + value + "'");
            m.components.push_back({std::string(parts[0]), std::string(parts[1]), parse_u64(parts[2], 10, "length"),
                                    parse_u64(parts[3], 16, "checksum")});
            continue;
        }
        if (!seen.emplace(key, value).second) throw format_error("manifest: duplicate key '" + key + "'");
    }
    const auto get = [&](std::string_view key) -> const std::string& {
        auto it = seen.find(key);
        if (it == seen.end()) throw format_error("manifest: missing key '" + std::string(key) + "'");
        return it->second;
    };
    if (get("format") != "surf-index") throw format_error("manifest: not a surf index");
    m.version = static_cast<std::uint32_t>(parse_u64(get("version"), 10, "version"));
    if (m.version != 1) throw format_error("manifest: unsupported version " + std::to_string(m.version));
    try {
        m.variant = parse_variant(get("variant"));
    } catch (const std::invalid_argument& e) {
        throw format_error(std::string("manifest: ") + e.what());
    }
    m.fingerprint = parse_u64(get("fingerprint"), 16, "fingerprint");
    m.num_docs = parse_u64(get("documents"), 10, "documents");
    m.num_tokens = parse_u64(get("tokens"), 10, "tokens");
    if (seen.size() != 6) throw format_error("manifest: unknown keys present");
    return m;
}

Index Index::build(Collection collection, Variant variant) {
    Index idx;
    idx.variant_ = variant;
    idx.collection_ = std::move(collection);
    const auto text = idx.collection_.text();
    const auto num_docs = static_cast<std::uint32_t>(idx.collection_.num_docs());

    idx.sa_ = build_sa(text);
    auto lcp = build_lcp(text, idx.sa_);
    const auto d = build_docarray(idx.sa_, idx.collection_);
    const auto reps = build_repetition_array(d, lcp);

    if (variant != Variant::d1r1) idx.doc_tree_.emplace(d, num_docs);
    idx.reps_ = RepetitionIndex(reps, num_docs, variant == Variant::dr);
    if (variant == Variant::d1r1) idx.restricted_.emplace(d, text, reps, num_docs);
    if (variant != Variant::d) idx.lcp_ = std::move(lcp);
    return idx;
}

std::optional<Locus> Index::locate(std::span<const Symbol> pattern) const {
    return locus(sa_, collection_.text(), pattern);
}

std::uint64_t Index::count(std::span<const Symbol> pattern) const {
    const auto l = locate(pattern);
    return l ? l->size() : 0;
}

IndexManifest Index::save(const fs::path& dir) const {
    fs::create_directories(dir);
    IndexManifest m;
    m.variant = variant_;
    m.fingerprint = collection_.fingerprint();
    m.num_docs = collection_.num_docs();
    m.num_tokens = collection_.size();

    const auto emit = [&](Tag tag, const std::string& file, auto&& body) {
        std::ostringstream os(std::ios::binary);
        write_header(os, tag);
        body(os);
        const std::string bytes = os.str();
        std::ofstream out(dir / file, std::ios::binary | std::ios::trunc);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw std::runtime_error("cannot write " + (dir / file).string());
        m.components.push_back({tag_string(tag), file, bytes.size(), checksum(bytes)});
    };

    emit(kVocabFileTag, "vocab.bin", [&](std::ostream& os) { collection_.vocabulary().save(os); });
    emit(kTextTag, "text.bin", [&](std::ostream& os) {
        write_u64(os, collection_.size());
        for (auto s : collection_.text()) write_u32(os, s);
    });
    emit(kDocsTag, "docs.bin", [&](std::ostream& os) {
        const auto names = collection_.names_by_slot();
        write_u64(os, names.size());
        for (const auto& name : names) write_string(os, name);
    });
    emit(kSaTag, "sa.bin", [&](std::ostream& os) { write_u64_array(os, sa_); });
    if (!lcp_.empty()) emit(kLcpTag, "lcp.bin", [&](std::ostream& os) { write_u64_array(os, lcp_); });
    if (doc_tree_) emit(kDocArrayTag, "docarray.bin", [&](std::ostream& os) { doc_tree_->save(os); });
    emit(kCountsTag, "df.bin", [&](std::ostream& os) { reps_.save_counts(os); });
    if (reps_.has_hat_tree()) emit(kRepTreeTag, "reps.bin", [&](std::ostream& os) { reps_.save_tree(os); });
    if (restricted_) emit(kRestrictedTag, "restricted.bin", [&](std::ostream& os) { restricted_->save(os); });

    std::ofstream out(dir / "manifest.txt", std::ios::trunc);
    out << m.to_text();
    if (!out) throw std::runtime_error("cannot write manifest");
    return m;
}

IndexManifest Index::read_manifest(const fs::path& dir) {
    const auto path = dir / "manifest.txt";
    if (!fs::is_regular_file(path)) throw format_error("no manifest in " + dir.string());
    return IndexManifest::parse(read_file(path));
}

Index Index::load(const fs::path& dir) {
    const auto m = read_manifest(dir);

    std::map<std::string, std::string> blobs;
    for (const auto& c : m.components) {
        if (c.file.find('/') != std::string::npos || c.file.find("..") != std::string::npos)
            throw format_error("manifest: illegal component file name '" + c.file + "'");
        const auto path = dir / c.file;
        if (!fs::is_regular_file(path)) throw format_error("missing component file " + c.file);
        std::string bytes = read_file(path);
        if (bytes.size() != c.bytes) throw format_error("component " + c.tag + ": length mismatch");
        if (bytes.compare(0, 4, c.tag) != 0) throw format_error("component " + c.file + ": tag mismatch");
        if (checksum(bytes) != c.checksum) throw format_error("component " + c.tag + ": checksum mismatch");
        if (!blobs.emplace(c.tag, std::move(bytes)).second) throw format_error("duplicate component " + c.tag);
    }

    const auto stream_of = [&](Tag tag, bool required) -> std::optional<std::istringstream> {
        auto it = blobs.find(tag_string(tag));
        if (it == blobs.end()) {
            if (required) throw format_error("manifest lacks component " + tag_string(tag));
            return std::nullopt;
        }
        std::optional<std::istringstream> is(std::in_place, it->second, std::ios::binary);
        read_header(*is, tag);
        return is;
    };

    Index idx;
    idx.variant_ = m.variant;
    {
        auto vs = stream_of(kVocabFileTag, true);
        auto vocab = Vocabulary::load(*vs);
        auto ts = stream_of(kTextTag, true);
        const auto n = read_u64(*ts);
        if (n != m.num_tokens) throw format_error("text length disagrees with manifest");
        std::vector<Symbol> text(n);
        for (auto& s : text) s = read_u32(*ts);
        expect_end(*ts, "SRFC");
        auto ds = stream_of(kDocsTag, true);
        const auto count = read_u64(*ds);
        if (count != m.num_docs) throw format_error("document count disagrees with manifest");
        std::vector<std::string> names(count);
        for (auto& name : names) name = read_string(*ds);
        try {
            idx.collection_ = Collection::from_concatenation(std::move(vocab), std::move(text), std::move(names));
        } catch (const std::invalid_argument& e) {
            throw format_error(std::string("collection: ") + e.what());
        }
    }
    if (idx.collection_.fingerprint() != m.fingerprint) throw format_error("collection fingerprint mismatch");
    const auto n = idx.collection_.size();

    {
        auto ss = stream_of(kSaTag, true);
        idx.sa_ = read_u64_array(*ss, n);
    }
    if (auto ls = stream_of(kLcpTag, m.variant != Variant::d)) idx.lcp_ = read_u64_array(*ls, n);
    if (auto ds = stream_of(kDocArrayTag, m.variant != Variant::d1r1)) {
        idx.doc_tree_ = WaveletTree::load(*ds);
        if (idx.doc_tree_->size() != n) throw format_error("document array length mismatch");
    }
    {
        auto hs = stream_of(kCountsTag, true);
        auto h = RankSelectBits::load(*hs);
        auto keep = RankSelectBits::load(*hs);
        std::optional<WaveletTree> tree;
        if (auto rs = stream_of(kRepTreeTag, m.variant == Variant::dr)) tree = WaveletTree::load(*rs);
        if (h.ones() != n) throw format_error("H does not match the text length");
        idx.reps_ = RepetitionIndex(std::move(h), std::move(keep), std::move(tree));
    }
    if (auto rs = stream_of(kRestrictedTag, m.variant == Variant::d1r1)) idx.restricted_ = RestrictedIndex::load(*rs);
    return idx;
}

}  // namespace surf
