#pragma once
// Internal consistency checks. Active when NDEBUG is unset or when the build
// defines MPINV_FORCE_CHECKS; release builds compile them out.

#include <cstdio>
#include <cstdlib>

#if defined(MPINV_FORCE_CHECKS) || !defined(NDEBUG)
#define MPINV_CHECKS_ENABLED 1
#else
#define MPINV_CHECKS_ENABLED 0
#endif

#if MPINV_CHECKS_ENABLED
#define MPINV_ASSERT(cond, what)                                           \
    do {                                                                   \
        if (!(cond)) {                                                     \
            std::fprintf(stderr, "mpinv check failed: %s (%s:%d): %s\n",   \
                         #cond, __FILE__, __LINE__, what);                 \
            std::abort();                                                  \
        }                                                                  \
    } while (0)
#else
#define MPINV_ASSERT(cond, what) ((void)0)
#endif
