#define SMALLGEMM_KERNEL_T double
#include "kernels.tpp"
