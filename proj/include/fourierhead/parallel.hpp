#pragma once

#include <functional>

namespace fourierhead {

// Thread cap for parallel waveform evaluation: FOURIER_HEAD_THREADS when set
// (minimum 1), otherwise the hardware concurrency.
int evaluation_thread_cap();

// Runs fn(0..count-1) on up to `thread_cap` threads. Tasks must be
// independent; with thread_cap <= 1 everything runs on the calling thread.
void parallel_for(int count, int thread_cap, const std::function<void(int)>& fn);

} // namespace fourierhead
