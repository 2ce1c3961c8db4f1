#include "vqremap.h"

#include <cstring>
#include <exception>
#include <string>

#include "error.hpp"
#include "report.hpp"
#include "runner.hpp"

struct vqr_config {
    vqremap::RunConfig config;
};

namespace {

thread_local std::string g_last_error;

vqr_status to_status(const vqremap::ErrorCode code) {
    switch (code) {
    case vqremap::ErrorCode::Config: return VQR_ERR_CONFIG;
    case vqremap::ErrorCode::Usage: return VQR_ERR_USAGE;
    case vqremap::ErrorCode::Ingest: return VQR_ERR_INGEST;
    case vqremap::ErrorCode::Numeric: return VQR_ERR_NUMERIC;
    case vqremap::ErrorCode::Index: return VQR_ERR_INDEX;
    case vqremap::ErrorCode::Io: return VQR_ERR_IO;
    case vqremap::ErrorCode::Internal: return VQR_ERR_INTERNAL;
    }
    return VQR_ERR_INTERNAL;
}

template <typename Fn>
vqr_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return VQR_OK;
    } catch (const vqremap::Error& e) {
        g_last_error = e.what();
        return to_status(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return VQR_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return VQR_ERR_INTERNAL;
    }
}

} // namespace

extern "C" {

const char* vqr_version(void) { return "0.1.0"; }

const char* vqr_status_name(vqr_status status) {
    switch (status) {
    case VQR_OK: return "VQR_OK";
    case VQR_ERR_CONFIG: return "VQR_ERR_CONFIG";
    case VQR_ERR_USAGE: return "VQR_ERR_USAGE";
    case VQR_ERR_INGEST: return "VQR_ERR_INGEST";
    case VQR_ERR_NUMERIC: return "VQR_ERR_NUMERIC";
    case VQR_ERR_INDEX: return "VQR_ERR_INDEX";
    case VQR_ERR_IO: return "VQR_ERR_IO";
    case VQR_ERR_INTERNAL: return "VQR_ERR_INTERNAL";
    }
    return "VQR_ERR_INTERNAL";
}

const char* vqr_last_error(void) { return g_last_error.c_str(); }

vqr_status vqr_config_create(vqr_config** out_config) {
    if (out_config == nullptr) {
        g_last_error = "out_config is null";
        return VQR_ERR_USAGE;
    }
    return guarded([&] { *out_config = new vqr_config(); });
}

void vqr_config_destroy(vqr_config* config) { delete config; }

vqr_status vqr_config_set(vqr_config* config, const char* key, const char* value) {
    if (config == nullptr || key == nullptr || value == nullptr) {
        g_last_error = "null argument";
        return VQR_ERR_USAGE;
    }
    return guarded([&] { config->config.set(key, value); });
}

vqr_status vqr_config_load_file(vqr_config* config, const char* path) {
    if (config == nullptr || path == nullptr) {
        g_last_error = "null argument";
        return VQR_ERR_USAGE;
    }
    return guarded([&] { config->config.load_file(path); });
}

vqr_status vqr_config_get(const vqr_config* config, const char* key, char* buf,
                          size_t buf_size) {
    if (config == nullptr || key == nullptr || buf == nullptr || buf_size == 0) {
        g_last_error = "null argument";
        return VQR_ERR_USAGE;
    }
    return guarded([&] {
        const std::string value = config->config.get(key);
        if (value.size() + 1 > buf_size) {
            throw vqremap::Error(vqremap::ErrorCode::Usage, "capi",
                                 "buffer too small for key '" + std::string(key) + "'");
        }
        std::memcpy(buf, value.c_str(), value.size() + 1);
    });
}

vqr_status vqr_run(const vqr_config* config) {
    if (config == nullptr) {
        g_last_error = "null config";
        return VQR_ERR_USAGE;
    }
    return guarded([&] { vqremap::run(config->config); });
}

vqr_status vqr_sweep(const vqr_config* config) {
    if (config == nullptr) {
        g_last_error = "null config";
        return VQR_ERR_USAGE;
    }
    return guarded([&] { vqremap::sweep(config->config); });
}

vqr_status vqr_report(const vqr_config* config) {
    if (config == nullptr) {
        g_last_error = "null config";
        return VQR_ERR_USAGE;
    }
    return guarded([&] { vqremap::report(config->config); });
}

vqr_status vqr_anova(const vqr_config* config) {
    if (config == nullptr) {
        g_last_error = "null config";
        return VQR_ERR_USAGE;
    }
    return guarded([&] { vqremap::anova(config->config); });
}

vqr_status vqr_plot(const vqr_config* config) {
    if (config == nullptr) {
        g_last_error = "null config";
        return VQR_ERR_USAGE;
    }
    return guarded([&] { vqremap::plot(config->config); });
}

} // extern "C"
