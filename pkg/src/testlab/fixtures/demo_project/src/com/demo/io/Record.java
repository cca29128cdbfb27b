package com.demo.io;

public class Record {
    private String key;
    private double value;
    private long timestamp;

    public String getKey() { return key; }

    public void setKey(String key) { this.key = key; }

    public double getValue() { return value; }

    public void setValue(double value) { this.value = value; }

    public long getTimestamp() { return timestamp; }

    public void setTimestamp(long timestamp) { this.timestamp = timestamp; }
}
