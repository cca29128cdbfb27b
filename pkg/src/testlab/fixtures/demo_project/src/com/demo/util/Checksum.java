package com.demo.util;

public class Checksum {
    private long state;

    public Checksum() {
        state = 17L;
    }

    public void update(byte[] data) {
        for (int i = 0; i < data.length; i++) {
            state = state * 31L + data[i];
            if ((state & 0xFF00000000000000L) != 0) {
                state ^= state >>> 32;
            }
        }
    }

    public void updateInt(int v) {
        state = state * 31L + v;
    }

    public long digest() {
        long mixed = state;
        mixed ^= mixed >>> 16;
        mixed *= 0x85EBCA6BL;
        mixed ^= mixed >>> 13;
        return mixed;
    }

    public void reset() {
        state = 17L;
    }
}
