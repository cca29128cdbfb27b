package com.demo.util;

public final class Bits {
    private Bits() { }

    public static int popcount(long v) {
        int n = 0;
        while (v != 0) {
            n += (int) (v & 1L);
            v >>>= 1;
        }
        return n;
    }

    public static boolean isPowerOfTwo(int v) {
        return v > 0 && (v & (v - 1)) == 0;
    }

    public static int nextPowerOfTwo(int v) {
        if (v <= 1) {
            return 1;
        }
        int p = 1;
        while (p < v) {
            p <<= 1;
        }
        return p;
    }
}
