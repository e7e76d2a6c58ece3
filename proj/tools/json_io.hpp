#pragma once

#include <string>

#include <json.hpp>

#include "gl3p/characters.hpp"
#include "gl3p/eisenstein.hpp"
#include "gl3p/exact_arith.hpp"
#include "gl3p/gl3_local.hpp"
#include "gl3p/iwasawa.hpp"
#include "gl3p/numeric.hpp"
#include "gl3p/symsq.hpp"
#include "gl3p/zeta_local.hpp"

namespace gl3p::cli {

using json = nlohmann::json;

// Bad input; `pointer` is the JSON pointer of the offending field ("" for the
// document itself, or the flag name for command-line values).
class InputError : public DomainError {
public:
    InputError(std::string pointer, const std::string& what)
        : DomainError(what), pointer_(std::move(pointer)) {}
    const std::string& pointer() const { return pointer_; }

private:
    std::string pointer_;
};

// A JSON value together with its location in the document.
class Node {
public:
    Node(const json& v, std::string pointer = "") : v_(&v), ptr_(std::move(pointer)) {}

    const json& value() const { return *v_; }
    const std::string& pointer() const { return ptr_; }
    bool has(const std::string& key) const;
    Node at(const std::string& key) const;
    Node at(std::size_t i) const;
    std::size_t size() const;  // arrays only

    [[noreturn]] void fail(const std::string& what) const;

    long as_long() const;
    int as_int() const;
    std::string as_string() const;
    Rat as_rat() const;
    Int as_int_big() const;
    CycNumber as_cyc() const;
    DirichletCharacter as_character() const;

private:
    const json* v_;
    std::string ptr_;
};

json parse_document(const std::string& text);

// "trivial", "quad:P" or "mod:M:e1,e2,..."
DirichletCharacter character_from_flag(const std::string& spec, const std::string& flag);
Rat rat_from_flag(const std::string& s, const std::string& flag);
CycNumber cyc_from_flag(const std::string& s, const std::string& flag);

LocalChar local_char_from(const Node& n);
LocalRepGL3 local_rep_from(const Node& n);
ZetaInput zeta_input_from(const Node& n);
SatakeParams satake_from(const Node& n);
SchwartzData schwartz_from(const Node& n);
GroupRingElem group_ring_from(const Node& n, long p);
ModFormData modform_from(const Node& n);

json to_json(const Rat& x);
json to_json(const CycNumber& x);
json to_json(const DirichletCharacter& chi);
json to_json(const LocalChar& c);
json to_json(const LaurentPoly& f);
json to_json(const LaurentRational& f);
json to_json(const SymbolicPeriod& s);
json to_json(const GroupRingElem& x);
json to_json(const Complex& z, int digits);
json to_json(const Real& x, int digits);

}  // namespace gl3p::cli
