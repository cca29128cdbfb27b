package com.demo.core;

import com.demo.io.Journal;
import com.demo.io.Record;
import com.demo.io.RecordSink;

public class Pipeline {
    private RecordSink sink;
    private Journal journal;
    private Level level;
    private int processed;

    public Pipeline(RecordSink sink, Journal journal, Level level) {
        this.sink = sink;
        this.journal = journal;
        this.level = level;
        this.processed = 0;
    }

    public int push(Record[] batch) {
        int accepted = 0;
        for (int i = 0; i < batch.length; i++) {
            Record r = batch[i];
            if (r == null) {
                journal.append("skip", "null record");
                continue;
            }
            boolean ok;
            switch (level) {
                case LOW:
                    ok = r.getValue() > 0;
                    break;
                case MEDIUM:
                    ok = r.getValue() > 0 && r.getKey() != null;
                    break;
                default:
                    ok = sink.offer(r);
                    break;
            }
            if (ok) {
                accepted++;
            } else {
                journal.append("drop", r.getKey());
            }
            processed++;
        }
        return accepted;
    }

    public double flush() {
        double total = sink.drainTotal();
        journal.append("flush", "total=" + total);
        return total;
    }

    public int getProcessed() { return processed; }
}
