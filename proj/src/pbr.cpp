#include "exclusionlab/pbr.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace exclusionlab {

std::string to_string(TaskLabel t) {
    switch (t) {
        case TaskLabel::T0p: return "0+";
        case TaskLabel::T0m: return "0-";
        case TaskLabel::T1p: return "1+";
        case TaskLabel::T1m: return "1-";
    }
    throw std::logic_error("bad task label");
}

TaskLabel task_label_from_string(const std::string& s) {
    if (s == "0+") return TaskLabel::T0p;
    if (s == "0-") return TaskLabel::T0m;
    if (s == "1+") return TaskLabel::T1p;
    if (s == "1-") return TaskLabel::T1m;
    throw std::invalid_argument("unknown task label: " + s);
}

std::size_t task_index(TaskLabel t) { return static_cast<std::size_t>(t); }

int z_label(TaskLabel t) { return (t == TaskLabel::T1p || t == TaskLabel::T1m) ? 1 : 0; }

bool x_label_is_minus(TaskLabel t) { return t == TaskLabel::T0m || t == TaskLabel::T1m; }

DensityOperator single_qubit_state(int s, int x) {
    if (s == 0) return DensityOperator::pure(x == 0 ? ket0() : ket1());
    return DensityOperator::pure(x == 0 ? ket_plus() : ket_minus());
}

DensityOperator product_state(const SourceCoordinates& c) {
    ComplexMatrix a = single_qubit_state(c.s_a, c.x_a).matrix();
    ComplexMatrix b = single_qubit_state(c.s_b, c.x_b).matrix();
    return DensityOperator(tensor(a, b));
}

SourceCoordinates index_map(int y, TaskLabel t) {
    if (y < 1 || y > 4) throw std::invalid_argument("outcome Y must lie in {1..4}");
    int ya = (y - 1) >> 1;
    int yb = (y - 1) & 1;
    auto side = [&](int bit) -> std::pair<int, int> {
        if (bit == 0) return {0, z_label(t)};
        return {1, x_label_is_minus(t) ? 1 : 0};
    };
    auto [sa, xa] = side(ya);
    auto [sb, xb] = side(yb);
    return SourceCoordinates{sa, xa, sb, xb};
}

namespace {

std::array<Ket, 4> base_exclusion_kets() {
    const double h = 0.5;
    const double r = 1.0 / std::sqrt(2.0);
    return {
        Ket({0.0, r, r, 0.0}),     // (|01> + |10>)/sqrt(2)
        Ket({h, -h, h, h}),        // (|0-> + |1+>)/sqrt(2)
        Ket({h, h, -h, h}),        // (|+1> + |-0>)/sqrt(2)
        Ket({r, 0.0, 0.0, -r}),    // (|+-> + |-+>)/sqrt(2)
    };
}

}  // namespace

ExclusionTask build_task(TaskLabel t) {
    std::array<Ket, 4> kets = base_exclusion_kets();
    std::vector<Effect> effects;
    effects.reserve(4);
    for (const Ket& k : kets) {
        ComplexMatrix proj = k.projector();
        switch (t) {
            case TaskLabel::T0p: break;
            case TaskLabel::T0m: proj = pauli_conjugate(proj, PauliPair::ZZ); break;
            case TaskLabel::T1p: proj = pauli_conjugate(proj, PauliPair::XX); break;
            case TaskLabel::T1m: proj = pauli_conjugate(proj, PauliPair::YY); break;
        }
        effects.emplace_back(std::move(proj));
    }
    std::array<SourceCoordinates, 4> coords = {index_map(1, t), index_map(2, t),
                                               index_map(3, t), index_map(4, t)};
    std::array<DensityOperator, 4> states = {product_state(coords[0]), product_state(coords[1]),
                                             product_state(coords[2]), product_state(coords[3])};
    return ExclusionTask{t, std::move(states), Povm(std::move(effects)), coords};
}

std::array<ExclusionTask, 4> build_all_tasks() {
    return {build_task(TaskLabel::T0p), build_task(TaskLabel::T0m), build_task(TaskLabel::T1p),
            build_task(TaskLabel::T1m)};
}

OperationalIdentityReport verify_operational_identity(double plus_perturbation) {
    ComplexMatrix z_side = (ket0().projector() + ket1().projector()) * cplx(0.5, 0.0);
    Ket plus = ket_plus();
    Ket minus = ket_minus();
    if (plus_perturbation != 0.0) {
        double a = 1.0;
        double b = 1.0 - plus_perturbation;
        double n = std::sqrt(a * a + b * b);
        plus = Ket({a / n, b / n});
    }
    ComplexMatrix x_side = (plus.projector() + minus.projector()) * cplx(0.5, 0.0);
    OperationalIdentityReport r;
    r.max_deviation = z_side.max_abs_diff(x_side);
    r.passed = r.max_deviation <= 1e-12;
    return r;
}

namespace {

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

nlohmann::json task_to_json(const ExclusionTask& task) {
    nlohmann::json j;
    j["label"] = to_string(task.label);
    j["states"] = nlohmann::json::array();
    j["effects"] = nlohmann::json::array();
    j["index_map"] = nlohmann::json::array();
    for (int y = 1; y <= 4; ++y) {
        j["states"].push_back(matrix_to_json(task.states[y - 1].matrix()));
        j["effects"].push_back(matrix_to_json(task.measurement[y - 1].matrix()));
        const SourceCoordinates& c = task.coordinates[y - 1];
        j["index_map"].push_back(
            {{"y", y}, {"s_a", c.s_a}, {"x_a", c.x_a}, {"s_b", c.s_b}, {"x_b", c.x_b}});
    }
    return j;
}

}  // namespace exclusionlab
