#include "gflab/genfunc_io.hpp"

#include <json.hpp>

#include "gflab/errors.hpp"
#include "genfunc_node.hpp"

namespace gflab {

namespace {

using nlohmann::json;

GenFunction parse_node(const json& j);

SmoothFn parse_smooth(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "const") return SmoothFn::constant(j.at("value").get<double>());
    if (kind == "poly") return SmoothFn::poly(j.at("coeffs").get<std::vector<double>>());
    if (kind == "sin")
        return SmoothFn::sine(j.at("amp").get<double>(), j.at("freq").get<double>(),
                              j.value("phase", 0.0));
    throw DomainError("unknown smooth function kind: " + kind);
}

HeavisideProfile parse_hprofile(const json& j) {
    HeavisideProfile p = preset_heaviside(j.at("tag").get<std::string>());
    const double width = j.value("width", 1.0);
    const double shift = j.value("shift", 0.0);
    if (width != 1.0) p = widened(p, width);
    if (shift != 0.0) p = shifted(p, shift);
    return p;
}

GenFunction fold(const json& arr, bool product) {
    if (!arr.is_array() || arr.size() < 2)
        throw DomainError("sum/product needs at least two children");
    GenFunction acc = parse_node(arr[0]);
    for (std::size_t i = 1; i < arr.size(); ++i) {
        acc = product ? GenFunction::product(acc, parse_node(arr[i]))
                      : GenFunction::sum(acc, parse_node(arr[i]));
    }
    return acc;
}

GenFunction parse_node(const json& j) {
    const std::string kind = j.at("node").get<std::string>();
    if (kind == "smooth") return GenFunction::smooth(parse_smooth(j.at("f")));
    if (kind == "heaviside")
        return GenFunction::heaviside_at(j.at("center").get<double>(),
                                         parse_hprofile(j.at("profile")));
    if (kind == "dirac")
        return GenFunction::dirac_at(j.at("center").get<double>(),
                                     preset_dirac(j.at("profile").at("tag").get<std::string>()));
    if (kind == "sum") return fold(j.at("terms"), false);
    if (kind == "product") return fold(j.at("factors"), true);
    if (kind == "scale")
        return GenFunction::scale(j.at("factor").get<double>(), parse_node(j.at("arg")));
    if (kind == "power")
        return GenFunction::power(parse_node(j.at("arg")), j.at("exponent").get<int>());
    if (kind == "sqrt") return GenFunction::sqrt(parse_node(j.at("arg")));
    if (kind == "derivative") return GenFunction::derivative(parse_node(j.at("arg")));
    throw DomainError("unknown node kind: " + kind);
}

json emit_smooth(const SmoothFn& s) {
    json j;
    switch (s.spec) {
        case SmoothFn::Spec::Const:
            j["kind"] = "const";
            j["value"] = s.params.at(0);
            return j;
        case SmoothFn::Spec::Poly:
            j["kind"] = "poly";
            j["coeffs"] = s.params;
            return j;
        case SmoothFn::Spec::Sin:
            j["kind"] = "sin";
            j["amp"] = s.params.at(0);
            j["freq"] = s.params.at(1);
            j["phase"] = s.params.at(2);
            return j;
        default:
            throw DomainError("opaque smooth function is not serializable");
    }
}

json emit_node(const std::shared_ptr<const GenFunction::Node>& n) {
    json j;
    switch (n->kind) {
        case NodeKind::Smooth:
            j["node"] = "smooth";
            j["f"] = emit_smooth(n->smooth);
            return j;
        case NodeKind::Heaviside: {
            if (n->hprof.base_tag.empty())
                throw DomainError("Heaviside profile is not serializable: " + n->hprof.tag);
            j["node"] = "heaviside";
            j["center"] = n->x0;
            json p;
            p["tag"] = n->hprof.base_tag;
            if (n->hprof.preset_width != 1.0) p["width"] = n->hprof.preset_width;
            if (n->hprof.preset_shift != 0.0) p["shift"] = n->hprof.preset_shift;
            j["profile"] = p;
            return j;
        }
        case NodeKind::Dirac:
            j["node"] = "dirac";
            j["center"] = n->x0;
            j["profile"] = json{{"tag", n->dprof.tag}};
            return j;
        case NodeKind::Sum:
            j["node"] = "sum";
            j["terms"] = json::array({emit_node(n->a), emit_node(n->b)});
            return j;
        case NodeKind::Product:
            j["node"] = "product";
            j["factors"] = json::array({emit_node(n->a), emit_node(n->b)});
            return j;
        case NodeKind::Scale:
            j["node"] = "scale";
            j["factor"] = n->factor;
            j["arg"] = emit_node(n->a);
            return j;
        case NodeKind::Power:
            j["node"] = "power";
            j["exponent"] = n->exponent;
            j["arg"] = emit_node(n->a);
            return j;
        case NodeKind::Sqrt:
            j["node"] = "sqrt";
            j["arg"] = emit_node(n->a);
            return j;
        case NodeKind::Derivative:
            j["node"] = "derivative";
            j["arg"] = emit_node(n->a);
            return j;
    }
    throw DomainError("corrupt node");
}

}  // namespace

GenFunction parse_genfunction(const std::string& json_text) {
    json j = json::parse(json_text);
    return parse_node(j);
}

std::string genfunction_to_json(const GenFunction& g) {
    if (!g.valid()) throw DomainError("empty generalized function");
    return emit_node(g.node()).dump();
}

}  // namespace gflab
