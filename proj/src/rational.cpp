#include "gptdyn/rational.hpp"

#include <ostream>

#include "gptdyn/errors.hpp"

namespace gptdyn {

Rat::Rat(int64_t num, int64_t den) {
    if (den == 0) {
        throw ArgumentError("rational with zero denominator");
    }
    v_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    v_.canonicalize();
}

static bool valid_integer_text(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) {
        return false;
    }
    for (; i < s.size(); i++) {
        if (s[i] < '0' || s[i] > '9') {
            return false;
        }
    }
    return true;
}

Rat Rat::parse(std::string_view text) {
    auto slash = text.find('/');
    std::string_view num_text = text.substr(0, slash);
    std::string_view den_text = slash == std::string_view::npos ? "1" : text.substr(slash + 1);
    if (!valid_integer_text(num_text) || !valid_integer_text(den_text) || den_text[0] == '-' ||
        den_text[0] == '+') {
        throw ArgumentError("not a rational literal: '" + std::string(text) + "'");
    }
    // mpz_class rejects a leading '+'.
    if (num_text[0] == '+') {
        num_text.remove_prefix(1);
    }
    mpz_class num(std::string(num_text), 10);
    mpz_class den(std::string(den_text), 10);
    if (den == 0) {
        throw ArgumentError("rational with zero denominator: '" + std::string(text) + "'");
    }
    return Rat(mpq_class(num, den));
}

Rat &Rat::operator/=(const Rat &o) {
    if (o.is_zero()) {
        throw ArgumentError("division by zero");
    }
    v_ /= o.v_;
    return *this;
}

std::string Rat::to_string() const {
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Rat::to_short_string() const {
    if (is_integer()) {
        return v_.get_num().get_str();
    }
    return to_string();
}

Rat abs(const Rat &r) { return r.sign() < 0 ? -r : r; }

std::ostream &operator<<(std::ostream &out, const Rat &r) { return out << r.to_short_string(); }

}  // namespace gptdyn
