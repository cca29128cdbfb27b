package com.demo.io;

import com.demo.core.Level;

public class RecordSink {
    private Record[] buffer;
    private int used;
    private Level level;

    public RecordSink(int capacity, Level level) {
        buffer = new Record[capacity];
        used = 0;
        this.level = level;
    }

    public boolean offer(Record r) {
        if (r == null || r.getKey() == null) {
            return false;
        }
        if (used == buffer.length) {
            if (!level.atLeast(Level.HIGH)) {
                return false;
            }
            compact();
        }
        buffer[used] = r;
        used++;
        return true;
    }

    private void compact() {
        int keep = 0;
        for (int i = 0; i < used; i++) {
            if (buffer[i].getValue() != 0.0) {
                buffer[keep] = buffer[i];
                keep++;
            }
        }
        for (int i = keep; i < used; i++) {
            buffer[i] = null;
        }
        used = keep;
    }

    public double drainTotal() {
        double total = 0.0;
        int i = 0;
        while (i < used) {
            total += buffer[i].getValue();
            buffer[i] = null;
            i++;
        }
        used = 0;
        return total;
    }

    public int getUsed() { return used; }
}
