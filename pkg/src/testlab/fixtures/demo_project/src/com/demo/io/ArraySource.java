package com.demo.io;

public class ArraySource implements Source {
    private Record[] data;
    private int cursor;

    public ArraySource(Record[] data) {
        this.data = data;
        this.cursor = 0;
    }

    public Record next() {
        if (!hasNext()) {
            throw new IllegalStateException("exhausted");
        }
        Record r = data[cursor];
        cursor++;
        return r;
    }

    public boolean hasNext() {
        while (cursor < data.length && data[cursor] == null) {
            cursor++;
        }
        return cursor < data.length;
    }

    public int remaining() {
        int n = 0;
        for (int i = cursor; i < data.length; i++) {
            if (data[i] != null) {
                n++;
            }
        }
        return n;
    }
}
