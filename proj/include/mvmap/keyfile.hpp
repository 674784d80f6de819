#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mvmap/scheme.hpp"

namespace mvmap {

enum class KeyKind { HT, BT, LT, ST, SVT, SAT };

const char* key_kind_name(KeyKind k);
KeyKind key_kind_from_name(std::string_view s);
// Section names a file of this kind may carry. Public kinds list only
// polynomial sections, so no private table can serialize into them.
const std::vector<std::string>& allowed_sections(KeyKind k);
bool is_public(KeyKind k);

// One key file: header fields plus exactly one table.
struct KeyFile {
    KeyKind kind = KeyKind::HT;
    std::shared_ptr<const Field> field;
    SchemeParams prm;
    std::uint64_t seed = 0;
    std::vector<std::string> warnings;

    std::optional<HashTable> ht;
    std::optional<BackTable> bt;
    std::optional<SignTable> st;
    std::optional<PublicTable> pub;

    Ctx ctx() const { return Ctx(field); }
};

KeyFile make_key(const Ctx& ctx, std::uint64_t seed, HashTable t);
KeyFile make_key(const Ctx& ctx, std::uint64_t seed, BackTable t);
KeyFile make_key(const Ctx& ctx, std::uint64_t seed, SignTable t);
KeyFile make_key(const Ctx& ctx, std::uint64_t seed, KeyKind kind, PublicTable t);

std::string serialize_key(const KeyFile& k);
// Throws Parse on any malformed or inconsistent content.
KeyFile parse_key(std::string_view text);
KeyFile load_key(const std::string& path);
void save_key(const std::string& path, const KeyFile& k);

// Multi-line human-readable dump.
std::string describe_key(const KeyFile& k);

}  // namespace mvmap
