#include "weaklaw/json_io.hpp"

namespace weaklaw {

Json value_to_json(Val v) {
    switch (v->tag()) {
        case Tag::Atom: return Json{{"atom", v->atom()}};
        case Tag::Set: {
            Json arr = Json::array();
            for (Val k : v->kids()) arr.push_back(value_to_json(k));
            return Json{{"set", std::move(arr)}};
        }
        case Tag::Multiset: {
            Json arr = Json::array();
            for (Val k : v->kids()) arr.push_back(value_to_json(k));
            return Json{{"multiset", std::move(arr)}};
        }
        case Tag::Pair:
            return Json{{"pair", Json::array({value_to_json(v->kids()[0]),
                                              value_to_json(v->kids()[1])})}};
        case Tag::Bip: {
            Json arr = Json::array();
            for (Val k : v->kids()) arr.push_back(value_to_json(k));
            return Json{{"bip", Json{{"set", std::move(arr)},
                                     {"a", value_to_json(v->first_point())},
                                     {"b", value_to_json(v->second_point())}}}};
        }
    }
    throw ParseError("unreachable value tag");
}

Val value_from_json(const Json& j) {
    if (!j.is_object() || j.size() != 1) throw ParseError("value must be a one-key object");
    auto kids_of = [](const Json& arr) {
        if (!arr.is_array()) throw ParseError("value children must be an array");
        std::vector<Val> kids;
        kids.reserve(arr.size());
        for (auto& k : arr) kids.push_back(value_from_json(k));
        return kids;
    };
    if (j.contains("atom")) {
        if (!j["atom"].is_string()) throw ParseError("atom label must be a string");
        return atom(j["atom"].get<std::string>());
    }
    if (j.contains("set")) return set_of(kids_of(j["set"]));
    if (j.contains("multiset")) return multiset_of(kids_of(j["multiset"]));
    if (j.contains("pair")) {
        auto kids = kids_of(j["pair"]);
        if (kids.size() != 2) throw ParseError("pair needs exactly two components");
        return pair_of(kids[0], kids[1]);
    }
    if (j.contains("bip")) {
        const Json& b = j["bip"];
        if (!b.is_object() || !b.contains("set") || !b.contains("a") || !b.contains("b"))
            throw ParseError("bip needs fields set, a, b");
        try {
            return bip_of(kids_of(b["set"]), value_from_json(b["a"]), value_from_json(b["b"]));
        } catch (const PreconditionError& e) {
            throw ParseError(e.what());
        }
    }
    throw ParseError("unknown value kind: " + j.begin().key());
}

Json carrier_to_json(const Cp& x) {
    Json arr = Json::array();
    for (Val v : x->elems()) arr.push_back(value_to_json(v));
    return Json{{"name", x->name()}, {"elements", std::move(arr)}};
}

Cp carrier_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("name") || !j.contains("elements"))
        throw ParseError("carrier needs fields name, elements");
    std::vector<Val> elems;
    for (auto& e : j["elements"]) elems.push_back(value_from_json(e));
    return make_carrier(j["name"].get<std::string>(), std::move(elems));
}

Json finfn_to_json(const FinFn& f) {
    Json pairs = Json::array();
    for (size_t i = 0; i < f.dom()->size(); ++i)
        pairs.push_back(Json::array({value_to_json(f.dom()->at(i)),
                                     value_to_json(f.cod()->at(f.map_idx(int32_t(i))))}));
    return Json{{"dom", carrier_to_json(f.dom())},
                {"cod", carrier_to_json(f.cod())},
                {"map", std::move(pairs)}};
}

FinFn finfn_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dom") || !j.contains("cod") || !j.contains("map"))
        throw ParseError("function needs fields dom, cod, map");
    Cp dom = carrier_from_json(j["dom"]);
    Cp cod = carrier_from_json(j["cod"]);
    std::vector<int32_t> tab(dom->size(), -1);
    for (auto& entry : j["map"]) {
        if (!entry.is_array() || entry.size() != 2)
            throw ParseError("function map entries must be [argument, value] pairs");
        Val a = value_from_json(entry[0]);
        Val b = value_from_json(entry[1]);
        if (!dom->contains(a) || !cod->contains(b))
            throw ParseError("function map entry outside its carriers");
        int32_t& slot = tab[dom->index_of(a)];
        int32_t bi = int32_t(cod->index_of(b));
        if (slot != -1 && slot != bi) throw ParseError("function maps an argument twice");
        slot = bi;
    }
    for (int32_t t : tab)
        if (t < 0) throw ParseError("function map is not total");
    return FinFn(std::move(dom), std::move(cod), std::move(tab));
}

Json finrel_to_json(const FinRel& r) {
    Json pairs = Json::array();
    for (auto& [i, j2] : r.pairs())
        pairs.push_back(
            Json::array({value_to_json(r.dom()->at(i)), value_to_json(r.cod()->at(j2))}));
    return Json{{"dom", carrier_to_json(r.dom())},
                {"cod", carrier_to_json(r.cod())},
                {"pairs", std::move(pairs)}};
}

FinRel finrel_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dom") || !j.contains("cod") || !j.contains("pairs"))
        throw ParseError("relation needs fields dom, cod, pairs");
    Cp dom = carrier_from_json(j["dom"]);
    Cp cod = carrier_from_json(j["cod"]);
    std::vector<std::pair<Val, Val>> pairs;
    for (auto& entry : j["pairs"]) {
        if (!entry.is_array() || entry.size() != 2)
            throw ParseError("relation pairs must be [left, right] pairs");
        Val a = value_from_json(entry[0]);
        Val b = value_from_json(entry[1]);
        if (!dom->contains(a) || !cod->contains(b))
            throw ParseError("relation pair outside its carriers");
        pairs.emplace_back(a, b);
    }
    return FinRel::from_pairs(std::move(dom), std::move(cod), pairs);
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace weaklaw
