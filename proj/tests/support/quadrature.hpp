#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

namespace vho_test {

// Adaptive quadrature oracle with integrable-endpoint-singularity support.
// Independent of the library under test: only the integrand is shared.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double abs_tol = 0.0, double rel_tol = 1e-10) {
    struct Call {
        const std::function<double(double)>* f;
    } call{&f};

    gsl_function gf;
    gf.function = [](double x, void* params) -> double {
        return (*static_cast<Call*>(params)->f)(x);
    };
    gf.params = &call;

    gsl_integration_workspace* ws = gsl_integration_workspace_alloc(4096);
    double result = 0.0;
    double abs_err = 0.0;
    gsl_error_handler_t* previous = gsl_set_error_handler_off();
    const int status =
        gsl_integration_qags(&gf, a, b, abs_tol, rel_tol, 4096, ws, &result, &abs_err);
    gsl_set_error_handler(previous);
    gsl_integration_workspace_free(ws);
    if (status != GSL_SUCCESS && status != GSL_EROUND) {
        throw std::runtime_error(std::string("quadrature failed: ") + gsl_strerror(status));
    }
    return result;
}

}  // namespace vho_test
